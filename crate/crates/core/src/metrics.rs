//! Reconstruction quality metrics for the 8-bit image pipeline.

use crate::opcount::OpCount;

/// Mean squared error over paired 8-bit samples.
pub fn mse(a: &[u8], b: &[u8]) -> f64 {
    assert_eq!(a.len(), b.len(), "sample counts differ");
    if a.is_empty() {
        return 0.0;
    }
    let sum: u64 = a
        .iter()
        .zip(b.iter())
        .map(|(&x, &y)| {
            let d = x as i64 - y as i64;
            (d * d) as u64
        })
        .sum();
    sum as f64 / a.len() as f64
}

/// 10 log10(255^2 / mse); infinite for a perfect reconstruction.
pub fn psnr(mse: f64) -> f64 {
    if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (255.0f64 * 255.0 / mse).log10()
    }
}

#[derive(Debug, Clone)]
pub struct MetricsReport {
    pub variant: String,
    pub mse: f64,
    pub psnr: f64,
    pub opcount: OpCount,
}

impl MetricsReport {
    pub fn psnr_display(&self) -> String {
        if self.psnr.is_infinite() {
            "inf".to_string()
        } else {
            format!("{:.4}", self.psnr)
        }
    }
}
