use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dtvertex::dtseries::{ConnectedMode, SurfaceData};
use dtvertex::partitions::Partition;
use dtvertex::vertex::CACHE_ENV;

#[derive(Parser, Debug)]
#[command(name = "dtvertex", version, about = "Topological vertices and DT series of local elliptic surfaces")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,

    /// Directory for cached vertex records.
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Ṽ and V for one leg triple.
    Vertex(VertexArgs),
    /// DT̂ as a vertex sum, a product, or both.
    Dt(DtArgs),
    /// DT̂_fib as a vertex sum, a product, or both.
    Dtfib(DtArgs),
    /// The connected series DT̂ / DT̂_fib against its Jacobi-form expression.
    Connected(ConnectedArgs),
    /// The connected series of the elliptic K3 (e(B) = 2, e(S) = 24).
    Kkv(KkvArgs),
    /// f_d at one point configuration, factored and by strata.
    Fd(FdArgs),
    /// Tangent dimension, Behrend sign and Haiman arrows of a comb curve.
    Tangent(TangentArgs),
    /// Euler characteristics of symmetric products.
    SymprodCheck(SymprodArgs),
    /// Run the identity suite.
    Check {
        #[command(subcommand)]
        what: CheckCommand,
    },
}

#[derive(Subcommand, Debug)]
pub enum CheckCommand {
    /// Every identity, at the acceptance orders unless overridden.
    All(CheckArgs),
}

#[derive(Args, Debug)]
pub struct VertexArgs {
    /// Legs as "λ;μ;ν", e.g. "2,1;;" or "1;1;".
    #[arg(long, allow_hyphen_values = true)]
    pub legs: String,
    /// Number of boxes beyond the minimal configuration.
    #[arg(long, default_value_t = 8)]
    pub p_order: i64,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct SurfaceArgs {
    /// Euler characteristic of the base curve (even).
    #[arg(long = "eB", allow_negative_numbers = true)]
    pub e_b: i64,
    /// Euler characteristic of the surface.
    #[arg(long = "eS", allow_negative_numbers = true)]
    pub e_s: i64,
}

impl SurfaceArgs {
    pub fn surface(&self) -> dtvertex::Result<SurfaceData> {
        SurfaceData::new(self.e_b, self.e_s)
    }
}

#[derive(Args, Debug, Clone)]
pub struct OrderArgs {
    /// Highest power of q.
    #[arg(long, default_value_t = 4)]
    pub q_order: usize,
    /// Vertex truncation N (default q_order² + 4).
    #[arg(long)]
    pub p_order: Option<i64>,
    /// Compare only on p^[lo, hi], e.g. "-5,5" or "-2.5,3".
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    pub p_window: Option<(i64, i64)>,
}

impl OrderArgs {
    pub fn p_order(&self) -> i64 {
        self.p_order.unwrap_or_else(|| dtvertex::dtseries::default_p_order(self.q_order))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Sum,
    Product,
    Both,
}

#[derive(Args, Debug)]
pub struct DtArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[command(flatten)]
    pub orders: OrderArgs,
    #[arg(long, value_enum, default_value_t = SideArg::Both)]
    pub side: SideArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Ratio,
    SumRatio,
    Jacobi,
}

impl From<ModeArg> for ConnectedMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Ratio => ConnectedMode::Ratio,
            ModeArg::SumRatio => ConnectedMode::SumRatio,
            ModeArg::Jacobi => ConnectedMode::Jacobi,
        }
    }
}

#[derive(Args, Debug)]
pub struct ConnectedArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[command(flatten)]
    pub orders: OrderArgs,
    /// How to build the side compared against the Jacobi form.
    #[arg(long, value_enum, default_value_t = ModeArg::Ratio)]
    pub mode: ModeArg,
}

#[derive(Args, Debug)]
pub struct KkvArgs {
    #[command(flatten)]
    pub orders: OrderArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::Ratio)]
    pub mode: ModeArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FdModeArg {
    Factored,
    Strata,
    Both,
}

#[derive(Args, Debug)]
pub struct FdArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    /// Multiplicities at points over smooth fibers, e.g. "2,1".
    #[arg(long, value_parser = parse_list, default_value = "")]
    pub a: Vec<usize>,
    /// Multiplicities at points over nodal fibers.
    #[arg(long, value_parser = parse_list, default_value = "")]
    pub b: Vec<usize>,
    #[arg(long, default_value_t = 8)]
    pub p_order: i64,
    #[arg(long, value_enum, default_value_t = FdModeArg::Both)]
    pub mode: FdModeArg,
}

#[derive(Args, Debug)]
pub struct TangentArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    /// Thickening of a smooth fiber, e.g. "2,1" (repeatable).
    #[arg(long, value_parser = parse_partition)]
    pub smooth: Vec<Partition>,
    /// Thickening of a nodal fiber (repeatable).
    #[arg(long, value_parser = parse_partition)]
    pub nodal: Vec<Partition>,
}

#[derive(Args, Debug)]
pub struct SymprodArgs {
    /// Euler characteristic of the base space.
    #[arg(long, allow_negative_numbers = true)]
    pub e: i64,
    #[arg(long, default_value_t = 6)]
    pub q_order: usize,
    /// Table g(0..=q_order) as JSON: a list of [[exp_half, coeff], …] per entry.
    /// Defaults to g ≡ 1.
    #[arg(long)]
    pub g: Option<String>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Override every q-order of the suite.
    #[arg(long)]
    pub q_order: Option<usize>,
    /// Override every vertex truncation of the suite.
    #[arg(long)]
    pub p_order: Option<i64>,
}

pub fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse::<Partition>().map_err(|e| e.to_string())
}

fn parse_list(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|e| format!("{t:?}: {e}")))
        .collect()
}

/// `"lo,hi"` in units of p (halves allowed) to half-units.
pub fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let halves = |t: &str| -> Result<i64, String> {
        let v: f64 = t.trim().parse().map_err(|e| format!("{t:?}: {e}"))?;
        let h = v * 2.0;
        if h.fract() != 0.0 {
            return Err(format!("{t} is not a multiple of 1/2"));
        }
        Ok(h as i64)
    };
    let (lo, hi) = s.split_once(',').ok_or("expected \"lo,hi\"")?;
    let (lo, hi) = (halves(lo)?, halves(hi)?);
    if lo > hi {
        return Err(format!("empty window [{lo}/2, {hi}/2]"));
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows_parse_in_half_units() {
        assert_eq!(parse_window("-5,5"), Ok((-10, 10)));
        assert_eq!(parse_window("-2.5, 3"), Ok((-5, 6)));
        assert!(parse_window("0.3,1").is_err());
        assert!(parse_window("2,1").is_err());
        assert!(parse_window("2").is_err());
    }

    #[test]
    fn lists_parse() {
        assert_eq!(parse_list("2,1"), Ok(vec![2, 1]));
        assert_eq!(parse_list(""), Ok(vec![]));
        assert!(parse_list("x").is_err());
    }

    #[test]
    fn negative_surface_flags() {
        let cli = Cli::try_parse_from(["dtvertex", "dt", "--eB", "-2", "--eS", "12"]).unwrap();
        match cli.command {
            Command::Dt(a) => assert_eq!((a.surface.e_b, a.surface.e_s), (-2, 12)),
            _ => panic!(),
        }
    }
}
