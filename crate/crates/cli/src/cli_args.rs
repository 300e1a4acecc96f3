use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "cordic-kit",
    about = "Fixed-point CORDIC engines, function evaluation, and a DCT image benchmark",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct EngineFlags {
    /// Rotation architecture.
    #[arg(long, default_value = "conventional")]
    pub variant: String,

    /// Word format, e.g. q2.14 (total bits = integer + fraction).
    #[arg(long, default_value = "q2.14")]
    pub format: String,

    /// Iteration budget.
    #[arg(long, default_value_t = 16)]
    pub iterations: u32,

    /// Convergence threshold in ulps (both z and y comparators).
    #[arg(long, default_value_t = 4)]
    pub epsilon_ulps: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate one function and print values, error against the
    /// double-precision reference, and the shift/add cost.
    Compute {
        /// Function name, e.g. sin-cos, divide, ln-sqrt.
        function: String,
        /// Arguments (angles in degrees for sin-cos, tan, polar-to-rect).
        #[arg(allow_negative_numbers = true)]
        args: Vec<f64>,
        #[command(flatten)]
        engine: EngineFlags,
        /// Emit one CSV row instead of the human-readable lines.
        #[arg(long)]
        csv: bool,
    },

    /// Sweep angles through several architectures and emit a CSV
    /// comparison of errors and operation counts.
    Compare {
        /// Sweep as start:end:count in degrees.
        #[arg(long, default_value = "-90:90:64", allow_hyphen_values = true)]
        sweep: String,
        /// Comma-separated variant list.
        #[arg(
            long,
            default_value = "conventional,scale-free,lookahead,radix4,recoding,hybrid-mixed,hybrid-partitioned,rico"
        )]
        variants: String,
        #[command(flatten)]
        engine: EngineFlags,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },

    /// Print the 8-point DCT coefficient error table, one column per
    /// architecture, with the configuration snapshot used.
    DctTable {
        /// Comma-separated variant list.
        #[arg(long, default_value = "exact,conventional,lookahead,rico")]
        variants: String,
        #[command(flatten)]
        engine: EngineFlags,
        /// CSV instead of the aligned table.
        #[arg(long)]
        csv: bool,
        /// Write the table here instead of stdout.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },

    /// Run the blockwise DCT/IDCT pipeline over a PGM image per variant,
    /// write the reconstructions, and report MSE/PSNR.
    Image {
        /// Input image, binary PGM (P5), 8-bit grayscale.
        input: std::path::PathBuf,
        /// Comma-separated variant list.
        #[arg(long, default_value = "exact,conventional,lookahead,rico")]
        variants: String,
        #[command(flatten)]
        engine: EngineFlags,
        /// Directory for the reconstructed images (defaults to the
        /// input's directory).
        #[arg(long)]
        out_dir: Option<std::path::PathBuf>,
        /// Reconstruct through the approximate inverse matrix as well,
        /// instead of the exact inverse only.
        #[arg(long)]
        approximate_inverse: bool,
        /// Write the metrics CSV here instead of stdout.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}
