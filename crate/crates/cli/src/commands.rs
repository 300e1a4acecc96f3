use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use cordic_core::dct::{self, Direction};
use cordic_core::functions::{self, FunctionKind, FunctionRequest};
use cordic_core::image;
use cordic_core::metrics::{self, MetricsReport};
use cordic_core::{EngineConfig, OpCount, QFormat, RunStatus, Variant};

use crate::cli_args::{Cli, Command, EngineFlags};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numeric(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Numeric(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

fn parse_format(text: &str) -> Result<QFormat, CliError> {
    let body = text
        .strip_prefix('q')
        .or_else(|| text.strip_prefix('Q'))
        .unwrap_or(text);
    let (int_part, frac_part) = body
        .split_once('.')
        .ok_or_else(|| CliError::Usage(format!("format '{text}' is not of the form qI.F")))?;
    let int_bits: u32 = int_part
        .parse()
        .map_err(|_| CliError::Usage(format!("bad integer bit count in '{text}'")))?;
    let frac_bits: u32 = frac_part
        .parse()
        .map_err(|_| CliError::Usage(format!("bad fraction bit count in '{text}'")))?;
    QFormat::new(int_bits + frac_bits, frac_bits)
        .map_err(|e| CliError::Usage(format!("unusable format '{text}': {e}")))
}

fn engine_config(flags: &EngineFlags) -> Result<EngineConfig, CliError> {
    let fmt = parse_format(&flags.format)?;
    let cfg = EngineConfig {
        fmt,
        max_iterations: flags.iterations,
        z_epsilon_ulps: flags.epsilon_ulps,
        y_epsilon_ulps: flags.epsilon_ulps,
        ..EngineConfig::default()
    };
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(cfg)
}

fn parse_variant(name: &str) -> Result<Variant, CliError> {
    Variant::from_str(name).map_err(CliError::Usage)
}

fn parse_variant_list(list: &str) -> Result<Vec<Variant>, CliError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(parse_variant)
        .collect()
}

fn parse_sweep(text: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "sweep '{text}' is not of the form start:end:count"
        )));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|_| CliError::Usage(format!("bad sweep start in '{text}'")))?;
    let end: f64 = parts[1]
        .parse()
        .map_err(|_| CliError::Usage(format!("bad sweep end in '{text}'")))?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| CliError::Usage(format!("bad sweep count in '{text}'")))?;
    if count < 2 || end <= start {
        return Err(CliError::Usage(
            "sweep needs end > start and at least two points".into(),
        ));
    }
    Ok((0..count)
        .map(|i| start + (end - start) * i as f64 / (count - 1) as f64)
        .collect())
}

fn write_text(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display()))),
        None => {
            print!("{text}");
            std::io::stdout()
                .flush()
                .map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

pub fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Compute {
            function,
            args,
            engine,
            csv,
        } => cmd_compute(&function, &args, &engine, csv),
        Command::Compare {
            sweep,
            variants,
            engine,
            out,
        } => cmd_compare(&sweep, &variants, &engine, out.as_deref()),
        Command::DctTable {
            variants,
            engine,
            csv,
            out,
        } => cmd_dct_table(&variants, &engine, csv, out.as_deref()),
        Command::Image {
            input,
            variants,
            engine,
            out_dir,
            approximate_inverse,
            out,
        } => cmd_image(
            &input,
            &variants,
            &engine,
            out_dir.as_deref(),
            approximate_inverse,
            out.as_deref(),
        ),
    }
}

fn cmd_compute(
    function: &str,
    args: &[f64],
    engine: &EngineFlags,
    csv: bool,
) -> Result<(), CliError> {
    let kind = FunctionKind::from_str(function).map_err(CliError::Usage)?;
    let variant = parse_variant(&engine.variant)?;
    let config = engine_config(engine)?;

    // degrees on the command line for the circular rotation angles
    let mut call_args = args.to_vec();
    for &idx in kind.angle_argument_indices() {
        if let Some(v) = call_args.get_mut(idx) {
            *v = v.to_radians();
        }
    }

    let req = FunctionRequest {
        kind,
        args: call_args.clone(),
        variant,
        config,
    };
    let result = functions::evaluate(&req).map_err(|e| match e {
        functions::FunctionError::BadArity { .. }
        | functions::FunctionError::UnsupportedVariant { .. } => CliError::Usage(e.to_string()),
        other => CliError::Usage(other.to_string()),
    })?;

    let reference = functions::reference_values(kind, &call_args);
    let mut text = String::new();
    if csv {
        text.push_str("function,output,value,reference,abs_err\n");
    }
    for (name, value) in &result.values {
        let reference_value = reference
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
            .unwrap_or(f64::NAN);
        let err = (value - reference_value).abs();
        if csv {
            text.push_str(&format!(
                "{},{},{:.9},{:.9},{:.3e}\n",
                kind, name, value, reference_value, err
            ));
        } else {
            text.push_str(&format!(
                "{name} = {value:.9}   (reference {reference_value:.9}, err {err:.3e})\n"
            ));
        }
    }
    if !csv {
        text.push_str(&format!(
            "{}   status={}\n",
            result.opcount,
            match result.status {
                RunStatus::Converged => "converged",
                RunStatus::BudgetExhausted => "budget-exhausted",
            }
        ));
    }
    write_text(None, &text)?;

    if result.status == RunStatus::BudgetExhausted {
        return Err(CliError::Numeric(
            "engine exhausted its iteration budget before converging".into(),
        ));
    }
    Ok(())
}

fn cmd_compare(
    sweep: &str,
    variants: &str,
    engine: &EngineFlags,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let angles = parse_sweep(sweep)?;
    let variant_list = parse_variant_list(variants)?;
    let config = engine_config(engine)?;

    let mut csv =
        String::from("variant,angle_deg,cos_err,sin_err,adds,shifts,multiplies,iterations\n");
    for variant in &variant_list {
        for &deg in &angles {
            let theta = deg.to_radians();
            let (folded, negate_cos) = functions::fold_angle(theta);
            let outcome = cordic_core::rotate_unit(*variant, folded, &config)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let sign = if negate_cos { -1.0 } else { 1.0 };
            let cos_err = (sign * outcome.cos_pre - theta.cos()).abs();
            let sin_err = (outcome.sin_pre - theta.sin()).abs();
            csv.push_str(&format!(
                "{},{:.4},{:.6e},{:.6e},{},{},{},{}\n",
                variant.name(),
                deg,
                cos_err,
                sin_err,
                outcome.ops.adds,
                outcome.ops.shifts,
                outcome.ops.multiplies,
                outcome.ops.iterations
            ));
        }
    }
    write_text(out, &csv)
}

fn cmd_dct_table(
    variants: &str,
    engine: &EngineFlags,
    csv: bool,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let variant_list = parse_variant_list(variants)?;
    let config = engine_config(engine)?;

    let mut reports = Vec::new();
    for variant in &variant_list {
        reports.push(
            dct::dct_coefficients(*variant, &config).map_err(|e| CliError::Usage(e.to_string()))?,
        );
    }

    let mut text = String::new();
    if csv {
        text.push_str("coefficient,angle_deg,exact");
        for r in &reports {
            text.push_str(&format!(",{}_pct_err", r.variant.name()));
        }
        text.push('\n');
        for row_idx in 0..7 {
            let base = &reports[0].rows[row_idx];
            text.push_str(&format!(
                "{},{:.2},{:.9}",
                base.label, base.angle_deg, base.exact
            ));
            for r in &reports {
                text.push_str(&format!(",{:.4}", r.rows[row_idx].percent_error));
            }
            text.push('\n');
        }
        for r in &reports {
            text.push_str(&format!("# {}\n", r.config_snapshot()));
        }
    } else {
        text.push_str("Error (%) in the 8-point DCT coefficients\n\n");
        text.push_str(&format!("{:<12}{:>10}", "coefficient", "angle"));
        for r in &reports {
            text.push_str(&format!("{:>20}", r.variant.name()));
        }
        text.push('\n');
        for row_idx in 0..7 {
            let base = &reports[0].rows[row_idx];
            text.push_str(&format!(
                "{:<12}{:>9.2}{}",
                base.label, base.angle_deg, "\u{00b0}"
            ));
            for r in &reports {
                text.push_str(&format!("{:>20.4}", r.rows[row_idx].percent_error));
            }
            text.push('\n');
        }
        text.push('\n');
        for r in &reports {
            text.push_str(&format!("config: {}\n", r.config_snapshot()));
        }
    }
    write_text(out, &text)
}

struct PipelineOutput {
    reconstruction: image::ImageBuffer,
    report: MetricsReport,
}

fn run_pipeline(
    original: &image::ImageBuffer,
    variant: Variant,
    config: &EngineConfig,
    approximate_inverse: bool,
) -> Result<PipelineOutput, CliError> {
    let (cosines, opcount) = if variant == Variant::Exact {
        (dct::exact_cosines(), OpCount::zero())
    } else {
        let report =
            dct::dct_coefficients(variant, config).map_err(|e| CliError::Usage(e.to_string()))?;
        (report.cosines(), report.opcount)
    };
    let forward = dct::build_matrix(&cosines);
    let inverse = if approximate_inverse {
        forward
    } else {
        dct::exact_matrix()
    };

    let padded = image::pad_to_blocks(original);
    let mut recon = padded.clone();
    for by in 0..padded.blocks_y() {
        for bx in 0..padded.blocks_x() {
            let block = padded.block(bx, by);
            let f = dct::transform_2d(&block, &forward, Direction::Forward);
            let r = dct::transform_2d(&f, &inverse, Direction::Inverse);
            recon.store_block(bx, by, &r);
        }
    }
    let reconstruction = recon.crop();
    let mse = metrics::mse(&original.samples, &reconstruction.samples);
    Ok(PipelineOutput {
        reconstruction,
        report: MetricsReport {
            variant: variant.name().to_string(),
            mse,
            psnr: metrics::psnr(mse),
            opcount,
        },
    })
}

fn cmd_image(
    input: &Path,
    variants: &str,
    engine: &EngineFlags,
    out_dir: Option<&Path>,
    approximate_inverse: bool,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let variant_list = parse_variant_list(variants)?;
    let config = engine_config(engine)?;
    let original = image::read_pgm(input).map_err(|e| CliError::Io(e.to_string()))?;

    let stem = input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "image".into());
    let dir: PathBuf = out_dir
        .map(Path::to_path_buf)
        .or_else(|| input.parent().map(Path::to_path_buf))
        .unwrap_or_else(|| PathBuf::from("."));

    let mut csv = String::from("variant,mse,psnr,adds,shifts,multiplies,iterations\n");
    for variant in &variant_list {
        let outp = run_pipeline(&original, *variant, &config, approximate_inverse)?;
        let path = dir.join(format!("{stem}.{}.pgm", variant.name()));
        image::write_pgm(&path, &outp.reconstruction)
            .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))?;
        csv.push_str(&format!(
            "{},{:.6},{},{},{},{},{}\n",
            outp.report.variant,
            outp.report.mse,
            outp.report.psnr_display(),
            outp.report.opcount.adds,
            outp.report.opcount.shifts,
            outp.report.opcount.multiplies,
            outp.report.opcount.iterations
        ));
    }
    write_text(out, &csv)
}
