//! One height computation from parsed options to a finished report.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use dynheight_core::{
    arch_height, canonical_height_oracle, default_precision, naive_height, nonarch::PartKind,
    FactoringPolicy, HeightBreakdown, MapLift, ProjectivePoint, PartialFactorization,
    DEFAULT_DIGIT_BUDGET,
};

use crate::fixtures;
use crate::parse::{parse_map, parse_point, ParseError};
use crate::report::{self, Report, Timing};

/// Working moduli beyond this many bits are refused.
pub const MAX_MODULUS_BITS: u64 = 1 << 28;

/// Largest accepted trial-division bound (the sieve holds one byte per integer).
pub const MAX_TRIAL_BOUND: u64 = 1 << 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapSource {
    Inline(String),
    File(PathBuf),
    Fixture(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub map: MapSource,
    pub point: Option<String>,
    pub terms: Option<usize>,
    pub precision_bits: Option<u32>,
    /// `None` disables the trial-division pre-step.
    pub trial_bound: Option<u64>,
    pub format: Format,
    pub emit_g_sequence: bool,
    pub oracle_n: Option<usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum JobError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    NotMorphism(dynheight_core::Error),
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("{0}")]
    Compute(dynheight_core::Error),
}

impl JobError {
    pub fn exit_code(&self) -> i32 {
        match self {
            JobError::Parse(_) | JobError::Usage(_) | JobError::Io { .. } => 2,
            JobError::NotMorphism(_) => 3,
            JobError::Budget(_) => 4,
            JobError::Compute(_) => 1,
        }
    }
}

impl From<dynheight_core::Error> for JobError {
    fn from(e: dynheight_core::Error) -> Self {
        use dynheight_core::Error as E;
        match e {
            E::ZeroResultant | E::DegreeTooSmall(_) => JobError::NotMorphism(e),
            E::DegreeMismatch(..) | E::EmptyForm | E::ZeroPoint => JobError::Usage(e.to_string()),
            E::DigitBudgetExceeded { .. } => JobError::Budget(e.to_string()),
            other => JobError::Compute(other),
        }
    }
}

pub struct Outcome {
    pub report: Report,
    pub breakdown: HeightBreakdown,
    pub warnings: Vec<String>,
}

impl Outcome {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.report.to_text(),
            Format::Json => self.report.to_json() + "\n",
        }
    }
}

struct Resolved {
    source: String,
    lift: MapLift,
    point: ProjectivePoint,
    terms: usize,
}

fn resolve(spec: &JobSpec) -> Result<Resolved, JobError> {
    let point = spec.point.as_deref().map(parse_point).transpose()?;
    let (source, lift, default_point, default_terms) = match &spec.map {
        MapSource::Fixture(id) => {
            let fx = fixtures::find(id)
                .ok_or_else(|| JobError::Usage(format!("unknown fixture '{id}' (see --list-fixtures)")))?;
            (format!("fixture {}: {}", fx.id, fx.title), fx.lift(), Some(fx.point()), fx.terms)
        }
        MapSource::Inline(text) => {
            let (f, g) = parse_map(text)?;
            (text.trim().to_string(), MapLift::new(f, g)?, None, 50)
        }
        MapSource::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| JobError::Io {
                path: path.clone(),
                source,
            })?;
            let (f, g) = parse_map(&text)?;
            (format!("file {}", path.display()), MapLift::new(f, g)?, None, 50)
        }
    };
    let point = point
        .or(default_point)
        .ok_or_else(|| JobError::Usage("--point is required unless a fixture is used".into()))?;
    let terms = spec.terms.unwrap_or(default_terms);
    if terms == 0 {
        return Err(JobError::Usage("--terms must be at least 1".into()));
    }
    Ok(Resolved {
        source,
        lift,
        point,
        terms,
    })
}

fn describe(parts: &PartialFactorization) -> String {
    let mut pieces = Vec::new();
    for (_, kind) in parts.entries() {
        match kind {
            PartKind::PrimePower { prime, exponent: 1 } => pieces.push(prime.to_string()),
            PartKind::PrimePower { prime, exponent } => pieces.push(format!("{prime}^{exponent}")),
            PartKind::Cofactor => pieces.push("R'".into()),
            PartKind::UserSupplied => pieces.push("part".into()),
        }
    }
    pieces.join(" * ")
}

pub fn run(spec: &JobSpec) -> Result<Outcome, JobError> {
    let started = Instant::now();
    let Resolved {
        source,
        lift,
        point,
        terms,
    } = resolve(spec)?;
    let bits = spec.precision_bits.unwrap_or_else(|| default_precision(&lift, terms));
    if bits < 64 {
        return Err(JobError::Usage(format!("--precision must be at least 64 bits, got {bits}")));
    }
    let modulus_bits = lift.resultant_abs().bits().saturating_mul(terms as u64);
    if modulus_bits > MAX_MODULUS_BITS {
        return Err(JobError::Budget(format!(
            "working modulus |Res|^{terms} has about {modulus_bits} bits (limit {MAX_MODULUS_BITS})"
        )));
    }

    let mut warnings = Vec::new();
    let content = lift.content();
    if content > num_bigint::BigUint::from(1u32) {
        warnings.push(format!(
            "F and G share the content {content}; the lift is used as given, so |Res| and the g_i include it"
        ));
    }

    let (policy, factoring) = match spec.trial_bound {
        None => (FactoringPolicy::None, String::from("unfactored")),
        Some(bound) if bound > MAX_TRIAL_BOUND => {
            return Err(JobError::Budget(format!("--trial-bound {bound} exceeds {MAX_TRIAL_BOUND}")));
        }
        Some(bound) => {
            let parts = dynheight_core::trial_division(&lift.resultant_abs(), bound);
            let label = if parts.is_empty() {
                String::from("|Res| = 1")
            } else {
                format!("trial division to {bound}: {}", describe(&parts))
            };
            (FactoringPolicy::Parts(parts), label)
        }
    };

    let (nonarch, arch) = std::thread::scope(|s| {
        let na = s.spawn(|| {
            let t = Instant::now();
            let r = dynheight_core::height::nonarch_with_policy(&lift, &point, terms, bits, &policy);
            (r, t.elapsed())
        });
        let t = Instant::now();
        let ar = (arch_height(&lift, &point, terms, bits), t.elapsed());
        (na.join().expect("nonarchimedean worker panicked"), ar)
    });
    let (nonarch, t_nonarch) = (nonarch.0?, nonarch.1);
    let (arch, t_arch) = (arch.0?, arch.1);
    let breakdown = HeightBreakdown::assemble(naive_height(&point, bits), nonarch, arch);
    if !breakdown.is_consistent() {
        warnings.push("the assembled height is below -error_bound; please report this input".into());
    }

    let oracle = match spec.oracle_n {
        Some(n) => Some(canonical_height_oracle(&lift, &point, n, bits, DEFAULT_DIGIT_BUDGET)?),
        None => None,
    };

    let total: Duration = started.elapsed();
    let report = report::build(report::Inputs {
        source,
        lift: &lift,
        point: &point,
        breakdown: &breakdown,
        precision_bits: bits,
        factoring,
        emit_g_sequence: spec.emit_g_sequence,
        oracle: oracle.as_deref(),
        timing: Timing {
            nonarch: report::millis(t_nonarch),
            arch: report::millis(t_arch),
            total: report::millis(total),
        },
    });
    Ok(Outcome {
        report,
        breakdown,
        warnings,
    })
}

/// The fixture catalog as text.
pub fn list_fixtures() -> String {
    let mut s = String::new();
    for fx in &fixtures::FIXTURES {
        s += &format!("{}  {}\n", fx.id, fx.title);
        s += &format!("      d = {}, P = {}, N = {}\n", fx.degree, fx.point_label(), fx.terms);
        s += &format!("      Res = {}\n", fx.resultant);
        for e in fx.expected {
            s += &format!("      {:<13}{}\n", e.label, e.value);
        }
        s += &format!("      {}\n", fx.notes.split_whitespace().collect::<Vec<_>>().join(" "));
    }
    s
}
