//! 8-point DCT-II coefficient generation and the blockwise transform
//! pipeline used by the image benchmark. The seven nontrivial basis
//! cosines cos(k pi / 16), k = 1..7, are exactly what a rotation-mode
//! engine produces, so every architecture gets its own coefficient set and
//! its own matrix.

use crate::engine::EngineConfig;
use crate::functions::fold_angle;
use crate::opcount::OpCount;
use crate::variants::{self, Variant, VariantError};

pub const LABELS: [char; 7] = ['a', 'b', 'c', 'd', 'e', 'f', 'g'];

/// The seven angles k * pi / 16 labeled a through g; d is the 45 degree
/// anchor that a single radix-2 micro-rotation consumes exactly.
pub fn dct_angles() -> [f64; 7] {
    let mut a = [0.0; 7];
    for (k, slot) in a.iter_mut().enumerate() {
        *slot = (k as f64 + 1.0) * std::f64::consts::PI / 16.0;
    }
    a
}

#[derive(Debug, Clone, Copy)]
pub struct CoefficientRow {
    pub label: char,
    pub angle_deg: f64,
    /// Engine output before the final format rounding.
    pub approx: f64,
    /// Engine output as published by the fixed-point format.
    pub quantized: f64,
    pub exact: f64,
    /// |approx - exact| / |exact| * 100.
    pub percent_error: f64,
}

#[derive(Debug, Clone)]
pub struct CoefficientReport {
    pub variant: Variant,
    pub rows: [CoefficientRow; 7],
    pub config: EngineConfig,
    pub opcount: OpCount,
}

impl CoefficientReport {
    pub fn cosines(&self) -> [f64; 7] {
        let mut c = [0.0; 7];
        for (i, row) in self.rows.iter().enumerate() {
            c[i] = row.approx;
        }
        c
    }

    pub fn max_relative_error(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.percent_error / 100.0)
            .fold(0.0, f64::max)
    }

    /// One-line snapshot sufficient to reproduce the column.
    pub fn config_snapshot(&self) -> String {
        format!(
            "variant={} fmt={} iterations={} z_eps={}ulp y_eps={}ulp correction={}",
            self.variant,
            self.config.fmt,
            self.config.max_iterations,
            self.config.z_epsilon_ulps,
            self.config.y_epsilon_ulps,
            if self.config.scale_correction {
                "on"
            } else {
                "off"
            }
        )
    }
}

/// Generate the seven coefficients through one architecture.
pub fn dct_coefficients(
    variant: Variant,
    config: &EngineConfig,
) -> Result<CoefficientReport, VariantError> {
    let mut rows = Vec::with_capacity(7);
    let mut opcount = OpCount::zero();
    for (k, &theta) in dct_angles().iter().enumerate() {
        let (folded, negate_cos) = fold_angle(theta);
        let out = variants::rotate_unit(variant, folded, config)?;
        let sign = if negate_cos { -1.0 } else { 1.0 };
        let approx = sign * out.cos_pre;
        let quantized = sign * out.cos.to_real();
        let exact = theta.cos();
        opcount += out.ops;
        rows.push(CoefficientRow {
            label: LABELS[k],
            angle_deg: theta.to_degrees(),
            approx,
            quantized,
            exact,
            percent_error: (approx - exact).abs() / exact.abs() * 100.0,
        });
    }
    Ok(CoefficientReport {
        variant,
        rows: rows.try_into().expect("seven rows"),
        config: *config,
        opcount,
    })
}

pub type Block8 = [[f64; 8]; 8];

/// Orthonormal 8x8 DCT-II matrix: C[i][j] = c(i) cos((2j+1) i pi / 16)
/// with c(0) = 1/sqrt(8) and c(i>0) = 1/2, every cosine drawn from the
/// seven-coefficient set by symmetry folding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DctMatrix8(pub Block8);

/// Fold cos(u * pi / 16) onto the coefficient labels.
fn folded_cosine(u: usize, cosines: &[f64; 7]) -> f64 {
    let mut u = u % 32;
    let mut sign = 1.0;
    if u > 16 {
        u = 32 - u;
    }
    if u > 8 {
        sign = -1.0;
        u = 16 - u;
    }
    match u {
        0 => sign,
        8 => 0.0,
        _ => sign * cosines[u - 1],
    }
}

/// Assemble the matrix from a coefficient set (a report's column or the
/// exact cosines).
pub fn build_matrix(cosines: &[f64; 7]) -> DctMatrix8 {
    let dc = 1.0 / 8.0f64.sqrt();
    let mut m = [[0.0; 8]; 8];
    for (i, row) in m.iter_mut().enumerate() {
        let ci = if i == 0 { dc } else { 0.5 };
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = ci * folded_cosine((2 * j + 1) * i, cosines);
        }
    }
    DctMatrix8(m)
}

pub fn exact_cosines() -> [f64; 7] {
    let mut c = [0.0; 7];
    for (k, slot) in c.iter_mut().enumerate() {
        *slot = ((k as f64 + 1.0) * std::f64::consts::PI / 16.0).cos();
    }
    c
}

pub fn exact_matrix() -> DctMatrix8 {
    build_matrix(&exact_cosines())
}

impl DctMatrix8 {
    pub fn transpose(&self) -> DctMatrix8 {
        let mut t = [[0.0; 8]; 8];
        for (i, row) in self.0.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                t[j][i] = v;
            }
        }
        DctMatrix8(t)
    }

    pub fn mul(&self, rhs: &Block8) -> Block8 {
        let mut out = [[0.0; 8]; 8];
        for i in 0..8 {
            for j in 0..8 {
                let mut acc = 0.0;
                for (k, rhs_row) in rhs.iter().enumerate() {
                    acc += self.0[i][k] * rhs_row[j];
                }
                out[i][j] = acc;
            }
        }
        out
    }

    /// Largest entry of |C C^T - I|.
    pub fn orthonormality_deviation(&self) -> f64 {
        let t = self.transpose();
        let prod = self.mul(&t.0);
        let mut worst = 0.0f64;
        for (i, row) in prod.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((v - target).abs());
            }
        }
        worst
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Blockwise 2-D transform: forward is M B M^T, inverse is M^T B M.
pub fn transform_2d(block: &Block8, m: &DctMatrix8, direction: Direction) -> Block8 {
    let mt = m.transpose();
    match direction {
        Direction::Forward => {
            let tmp = m.mul(block);
            DctMatrix8(tmp).mul(&mt.0)
        }
        Direction::Inverse => {
            let tmp = mt.mul(block);
            DctMatrix8(tmp).mul(&m.0)
        }
    }
}

pub fn frobenius_norm(block: &Block8) -> f64 {
    block.iter().flatten().map(|v| v * v).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;

    #[test]
    fn labels_and_angles() {
        let a = dct_angles();
        assert!((a[3] - std::f64::consts::FRAC_PI_4).abs() < 1e-15); // d = 45 degrees
        assert!((a[0].to_degrees() - 11.25).abs() < 1e-12);
        assert!((a[6].to_degrees() - 78.75).abs() < 1e-12);
    }

    #[test]
    fn exact_pseudo_variant_has_zero_error() {
        let report = dct_coefficients(Variant::Exact, &EngineConfig::default()).unwrap();
        for row in &report.rows {
            assert_eq!(row.percent_error, 0.0, "label {}", row.label);
        }
        assert!((report.rows[0].exact - 0.98079).abs() < 1e-5);
    }

    #[test]
    fn conventional_d_label_is_exact_before_quantization() {
        let report = dct_coefficients(Variant::Conventional, &EngineConfig::default()).unwrap();
        let d = &report.rows[3];
        assert!(d.percent_error < 1e-13, "d error {}", d.percent_error);
    }

    #[test]
    fn percent_error_is_even_in_the_angle() {
        // floor shifts are not odd-symmetric, so evenness of the cosine
        // holds to within a few ulps of truncation noise, not bit-exactly
        let cfg = EngineConfig::default();
        for &theta in &dct_angles() {
            let pos = variants::rotate_unit(Variant::Conventional, theta, &cfg).unwrap();
            let neg = variants::rotate_unit(Variant::Conventional, -theta, &cfg).unwrap();
            let diff = (pos.cos.raw() - neg.cos.raw()).abs();
            assert!(diff <= 4, "cos evenness off by {diff} ulps at {theta}");
        }
    }

    #[test]
    fn exact_matrix_is_orthonormal() {
        assert!(exact_matrix().orthonormality_deviation() < 1e-12);
    }

    #[test]
    fn matrix_row_zero_is_dc() {
        let m = exact_matrix();
        for j in 0..8 {
            assert!((m.0[0][j] - 1.0 / 8.0f64.sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn matrix_matches_direct_cosine_formula() {
        let m = exact_matrix();
        for i in 0..8 {
            let ci = if i == 0 { 1.0 / 8.0f64.sqrt() } else { 0.5 };
            for j in 0..8 {
                let direct = ci * (((2 * j + 1) * i) as f64 * std::f64::consts::PI / 16.0).cos();
                assert!((m.0[i][j] - direct).abs() < 1e-12, "entry ({i}, {j})");
            }
        }
    }

    #[test]
    fn variant_matrix_deviation_tracks_coefficient_error() {
        let report = dct_coefficients(Variant::Conventional, &EngineConfig::default()).unwrap();
        let m = build_matrix(&report.cosines());
        let dev = m.orthonormality_deviation();
        assert!(
            dev <= 4.0 * report.max_relative_error(),
            "deviation {dev} vs bound {}",
            4.0 * report.max_relative_error()
        );
    }

    #[test]
    fn forward_of_constant_block_is_dc_only() {
        let m = exact_matrix();
        let block = [[128.0f64; 8]; 8];
        let f = transform_2d(&block, &m, Direction::Forward);
        assert!((f[0][0] - 128.0 * 8.0).abs() < 1e-9);
        for (i, row) in f.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if (i, j) != (0, 0) {
                    assert!(v.abs() < 1e-9, "AC entry ({i}, {j}) = {v}");
                }
            }
        }
    }

    #[test]
    fn exact_roundtrip_recovers_block() {
        let mut rng = StdRng::seed_from_u64(5150);
        let m = exact_matrix();
        for _ in 0..20 {
            let mut block = [[0.0f64; 8]; 8];
            for row in &mut block {
                for v in row.iter_mut() {
                    *v = rng.random_range(-128.0..128.0);
                }
            }
            let f = transform_2d(&block, &m, Direction::Forward);
            let r = transform_2d(&f, &m, Direction::Inverse);
            for i in 0..8 {
                for j in 0..8 {
                    assert!((r[i][j] - block[i][j]).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn forward_preserves_frobenius_norm() {
        let mut rng = StdRng::seed_from_u64(999);
        let m = exact_matrix();
        let mut block = [[0.0f64; 8]; 8];
        for row in &mut block {
            for v in row.iter_mut() {
                *v = rng.random_range(-128.0..128.0);
            }
        }
        let f = transform_2d(&block, &m, Direction::Forward);
        assert!((frobenius_norm(&f) - frobenius_norm(&block)).abs() < 1e-10);
    }

    #[test]
    fn every_selector_agrees_on_the_45_degree_first_rotation() {
        // label d is the index-0 elementary angle, so every direction
        // selector opens with the same exact micro-rotation
        use crate::fixnum::FixedWord;
        use crate::variants::{lookahead, radix4, recoding};
        let fmt = crate::fixnum::QFormat::q2_14();
        let d = FixedWord::from_real(std::f64::consts::FRAC_PI_4, fmt).unwrap();
        assert_eq!(lookahead::lookahead_sigmas(d)[0], 1);
        assert_eq!(radix4::radix4_select(d, 0), 1);
        let schedule = recoding::angle_recode_greedy(d, 14);
        assert_eq!(
            (schedule.entries[0].index, schedule.entries[0].sigma),
            (0, 1)
        );
    }

    #[test]
    fn snapshot_names_the_configuration() {
        let report = dct_coefficients(Variant::Rico, &EngineConfig::default()).unwrap();
        let snap = report.config_snapshot();
        assert!(snap.contains("rico"));
        assert!(snap.contains("Q2.14"));
        assert!(snap.contains("iterations=16"));
    }
}
