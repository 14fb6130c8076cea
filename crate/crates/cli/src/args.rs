use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "frobnil", version, about = "Frobenius and tight closure computations over F_p[x_1..x_n]/A")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,

    /// Run one command per line from a file (`#` starts a comment).
    #[arg(long, value_name = "FILE")]
    pub script: Option<PathBuf>,

    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Print the JSON report instead of the human-readable one.
    #[arg(long, global = true)]
    pub json: bool,

    /// Frobenius exponent cap (defaults to 4 for p <= 3, else 2).
    #[arg(long, global = true, env = "FROBNIL_EMAX")]
    pub emax: Option<u32>,

    /// Depth of the tight closure upper bound.
    #[arg(long = "bigE", global = true, env = "FROBNIL_BIGE", default_value_t = 2)]
    pub big_e: u32,

    /// Test element c for tight closure bounds.
    #[arg(long, global = true, value_name = "POLY")]
    pub test_element: Option<String>,

    /// Seed for randomized searches.
    #[arg(long, global = true, env = "FROBNIL_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Draws per slot in filter regular searches.
    #[arg(long, global = true, env = "FROBNIL_BUDGET", default_value_t = 64)]
    pub budget: usize,

    #[arg(long, global = true)]
    pub assume_equidimensional: bool,

    #[arg(long, global = true)]
    pub assume_reduced: bool,

    /// The nilradical of A, as an ideal of the polynomial ring.
    #[arg(long, global = true, value_name = "IDEAL")]
    pub nilradical: Option<String>,

    /// Cross-check against brute-force enumeration where applicable.
    #[arg(long, global = true)]
    pub verify_with_oracle: bool,

    /// Use lex instead of grevlex.
    #[arg(long, global = true)]
    pub lex: bool,
}

#[derive(Debug, Clone, Args)]
pub struct RingArg {
    /// Ring such as "F2[x,y]/(x^2*y)".
    #[arg(long)]
    pub ring: String,
}

#[derive(Debug, Clone, Args)]
pub struct IdealArg {
    #[command(flatten)]
    pub ring: RingArg,
    /// Ideal such as "(x, y^2)".
    #[arg(long)]
    pub ideal: String,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Reduced Groebner basis of I + A.
    Gb(IdealArg),
    /// Krull dimension and structure of R (or of R/I with --ideal).
    Dim {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Ideal membership of a polynomial.
    Member {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        poly: String,
    },
    /// (I + A) : J.
    Colon {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        by: String,
    },
    /// (I + A) : J^inf, with J = m by default.
    Sat {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        by: Option<String>,
    },
    /// Bracket power I^[p^e].
    Bpow {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long, default_value_t = 1)]
        e: u32,
    },
    /// Frobenius root of I + A.
    Froot {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long, default_value_t = 1)]
        e: u32,
        /// Smallest J with J^[p^e] containing I + A, instead of {f : f^(p^e) in I + A}.
        #[arg(long)]
        minimal: bool,
    },
    /// Frobenius closure I^F up to the exponent cap.
    Fclosure(IdealArg),
    /// Least e with f^(p^e) in I^[p^e] + A.
    Fmember {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        poly: String,
    },
    /// Upper bound for the tight closure I*.
    Tcupper(IdealArg),
    /// Sandwich I^F <= I* <= upper bound.
    Ceq(IdealArg),
    /// Check that a sequence is filter regular.
    #[command(name = "filterreg-check")]
    FilterregCheck {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        sequence: String,
    },
    /// Search for a filter regular sequence of length t.
    #[command(name = "filterreg-find")]
    FilterregFind {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        t: Option<usize>,
    },
    /// H^0_m(R/I) as (I : m^inf) / I.
    H0(IdealArg),
    /// Whether (I : K^inf) lies in I^F.
    Relnil {
        #[command(flatten)]
        ideal: IdealArg,
        /// K, the maximal ideal by default.
        #[arg(long)]
        by: Option<String>,
    },
    /// The constant C with m^(C p^e) killing H^0_m(R/I^[p^e]).
    Lcconst {
        #[command(flatten)]
        ideal: IdealArg,
        /// Skip the filter regular check on the generators of I.
        #[arg(long)]
        assume_filter_regular: bool,
    },
    /// Full F-nilpotence test.
    Fnilpotent {
        #[command(flatten)]
        ring: RingArg,
    },
    /// Sample estimate of the Frobenius test exponent.
    Fte {
        #[command(flatten)]
        ring: RingArg,
        /// Parameter ideals to sample; repeat the flag for several.
        #[arg(long = "ideal", required = true)]
        ideals: Vec<String>,
    },
    /// Colon-capturing candidates ((x_1..x_t) + A) : x_(t+1)^inf.
    Witnesses {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        sequence: String,
        #[arg(long)]
        t: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gb(_) => "gb",
            Command::Dim { .. } => "dim",
            Command::Member { .. } => "member",
            Command::Colon { .. } => "colon",
            Command::Sat { .. } => "sat",
            Command::Bpow { .. } => "bpow",
            Command::Froot { .. } => "froot",
            Command::Fclosure(_) => "fclosure",
            Command::Fmember { .. } => "fmember",
            Command::Tcupper(_) => "tcupper",
            Command::Ceq(_) => "ceq",
            Command::FilterregCheck { .. } => "filterreg-check",
            Command::FilterregFind { .. } => "filterreg-find",
            Command::H0(_) => "h0",
            Command::Relnil { .. } => "relnil",
            Command::Lcconst { .. } => "lcconst",
            Command::Fnilpotent { .. } => "fnilpotent",
            Command::Fte { .. } => "fte",
            Command::Witnesses { .. } => "witnesses",
        }
    }

    pub fn ring(&self) -> &str {
        match self {
            Command::Gb(i)
            | Command::Fclosure(i)
            | Command::Tcupper(i)
            | Command::Ceq(i)
            | Command::H0(i)
            | Command::Member { ideal: i, .. }
            | Command::Colon { ideal: i, .. }
            | Command::Sat { ideal: i, .. }
            | Command::Bpow { ideal: i, .. }
            | Command::Froot { ideal: i, .. }
            | Command::Fmember { ideal: i, .. }
            | Command::Relnil { ideal: i, .. }
            | Command::Lcconst { ideal: i, .. } => &i.ring.ring,
            Command::Dim { ring, .. }
            | Command::FilterregCheck { ring, .. }
            | Command::FilterregFind { ring, .. }
            | Command::Fnilpotent { ring }
            | Command::Fte { ring, .. }
            | Command::Witnesses { ring, .. } => &ring.ring,
        }
    }
}
