use num_traits::Zero;
use pdrqa::oracle;
use pdrqa::pdseq::{pd_prefix_substitution, pd_prefix_toeplitz, pd_prefix_valuation};
use pdrqa::rplines;
use pdrqa::rqa::{self, RqaReport};
use pdrqa::{classify_length, params, BigRational, BinaryWord, LengthClass};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{ConvergeArgs, Embedding, Format, GenerateArgs, Kind, LinesArgs, OracleArgs, RqaArgs};
use crate::error::{CliError, CliResult};
use crate::table::{ratio_text, to_f64, Cell, Record, Table};

/// Everything that determines a run's output, serialized as the `config`
/// object of JSON output. Thread count and output path are not part of it.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub n: Option<u64>,
    /// Embedding dimension as given on the command line.
    pub m: Option<u64>,
    pub eps: Option<f64>,
    /// Dimension actually used once `eps` is applied.
    pub m_effective: Option<u64>,
    pub lmin: Option<u64>,
    pub lmax: Option<u64>,
    pub schedule: Option<Vec<u64>>,
    pub lengths: Option<Vec<u64>>,
    pub kind: Option<Kind>,
    pub format: Format,
}

impl RunConfig {
    fn new(command: &'static str, format: Format) -> Self {
        RunConfig {
            command,
            n: None,
            m: None,
            eps: None,
            m_effective: None,
            lmin: None,
            lmax: None,
            schedule: None,
            lengths: None,
            kind: None,
            format,
        }
    }

    fn with_embedding(mut self, e: &Embedding) -> CliResult<Self> {
        self.m = Some(e.m);
        self.eps = e.eps;
        self.m_effective = Some(match e.eps {
            Some(eps) => rqa::eps_to_embedding(eps, e.m)?,
            None => e.m,
        });
        Ok(self)
    }

    fn dim(&self) -> u64 {
        self.m_effective.expect("embedding resolved")
    }

    fn eps_cell(&self) -> Cell {
        self.eps.map_or(Cell::Empty, Cell::Float)
    }
}

pub enum Output {
    Text(String),
    Table { config: Box<RunConfig>, table: Table, oracle: Value },
}

fn rational_json(q: &BigRational) -> Value {
    json!({ "exact": ratio_text(q), "approx": to_f64(q) })
}

fn rel_err(got: Option<f64>, want: f64) -> Option<f64> {
    got.filter(|_| want != 0.0).map(|g| (g - want).abs() / want.abs())
}

/// Prefix long enough for an `m`-embedded plot of size `n`.
fn word_for(n: u64, m: u64) -> CliResult<BinaryWord> {
    let len = n
        .checked_add(m)
        .filter(|&l| l <= 1 << 34)
        .ok_or_else(|| CliError::Usage(format!("plot size {n} too large")))?;
    Ok(pd_prefix_substitution(len as usize))
}

pub fn generate(args: &GenerateArgs, format: Option<Format>) -> CliResult<Output> {
    let n = usize::try_from(args.n).map_err(|_| CliError::Usage(format!("n = {} too large", args.n)))?;
    let x = pd_prefix_substitution(n);
    let mut words = vec![("substitution", x)];
    if args.cross_check {
        words.push(("valuation", pd_prefix_valuation(n)));
        words.push(("toeplitz", pd_prefix_toeplitz(n)));
    }
    let agree = words.iter().all(|(_, w)| *w == words[0].1);
    let output = match format {
        None => {
            let mut text = String::new();
            if args.cross_check {
                for (name, w) in &words {
                    text.push_str(&format!("{name} {w}\n"));
                }
                text.push_str(if agree { "AGREE\n" } else { "DISAGREE\n" });
            } else {
                text.push_str(&format!("{}\n", words[0].1));
            }
            Output::Text(text)
        }
        Some(format) => {
            let mut config = RunConfig::new("generate", format);
            config.n = Some(args.n);
            let mut table = Table::new();
            for (name, w) in &words {
                table.push(
                    Record::new()
                        .cell("generator", Cell::Text(name.to_string()))
                        .cell("word", Cell::Text(w.to_string())),
                );
            }
            let oracle = if args.cross_check { json!({ "agree": agree }) } else { Value::Null };
            Output::Table { config: Box::new(config), table, oracle }
        }
    };
    if agree {
        Ok(output)
    } else {
        Err(CliError::Verification("generators disagree".into()))
    }
}

pub fn lines(args: &LinesArgs, format: Format) -> CliResult<Output> {
    let mut config = RunConfig::new("lines", format).with_embedding(&args.embedding)?;
    config.n = Some(args.n);
    config.kind = Some(args.kind);
    let (n, m) = (args.n, config.dim());
    let x = word_for(n, m)?;
    let mut table = Table::new();
    let cells = BigRational::from_integer((u128::from(n) * u128::from(n)).into());
    let base = |length: u64, count: u64, closed: u64| {
        Record::new()
            .int("n", n)
            .int("m", m)
            .cell("eps", config.eps_cell())
            .int("length", length)
            .int("count", count)
            .int("closed", closed)
            .exact("dens", Some(&(BigRational::from_integer(count.into()) / &cells)))
    };
    let oracle = match args.kind {
        Kind::Diagonal => {
            let hist = rplines::diagonal_histogram(&x, n, m)?;
            let mut closed = rplines::LineHistogram::new(n, m, pdrqa::LineKind::Diagonal);
            rplines::for_each_diagonal_line(&x, n, m, |p| {
                if p.is_closed(n) {
                    closed.add(p.length, 2);
                }
            })?;
            for (length, count) in hist.iter() {
                let limit = oracle::dens(m, length);
                table.push(
                    base(length, count, closed.count(length))
                        .cell("allowed", Cell::Bool(classify_length(length + m - 1).is_allowed()))
                        .exact("dens_oracle", Some(&limit)),
                );
            }
            json!({ "lmax": hist.lmax() })
        }
        Kind::Vertical => {
            let split = rplines::vertical_split(&x, n, m)?;
            for (length, count) in split.merged().iter() {
                table.push(base(length, count, split.closed.count(length)));
            }
            json!({ "closed_lengths": oracle::vertical_lengths(m) })
        }
    };
    Ok(Output::Table { config: Box::new(config), table, oracle })
}

/// The limits that a finite report converges to.
struct Limits {
    rr: BigRational,
    det: BigRational,
    lavg: BigRational,
    entr: f64,
    denss: BigRational,
}

impl Limits {
    fn new(m: u64, lmin: u64) -> Self {
        Limits {
            rr: oracle::rr(m, lmin),
            det: oracle::det(m, lmin),
            lavg: oracle::lavg(m, lmin),
            entr: oracle::entr(m, lmin),
            denss: oracle::denss_asymptotic(lmin + m - 1),
        }
    }

    fn json(&self) -> Value {
        json!({
            "rr": rational_json(&self.rr),
            "det": rational_json(&self.det),
            "lavg": rational_json(&self.lavg),
            "denss": rational_json(&self.denss),
            "entr": self.entr,
        })
    }
}

/// Empirical value, limit and relative error for the quantifiers of `r`.
fn quantifier_cells(mut rec: Record, r: &RqaReport, lim: &Limits) -> Record {
    let exact = [
        ("rr", Some(&r.rr), &lim.rr),
        ("det", r.det.as_ref(), &lim.det),
        ("lavg", r.lavg.as_ref(), &lim.lavg),
        ("denss", Some(&r.denss), &lim.denss),
    ];
    for (name, got, want) in exact {
        rec = rec
            .exact(name, got)
            .exact(&format!("{name}_oracle"), Some(want))
            .float(format!("{name}_err"), rel_err(got.map(to_f64), to_f64(want)));
    }
    rec.float("entr", r.entr).float("entr_oracle", Some(lim.entr)).float("entr_err", rel_err(r.entr, lim.entr))
}

pub fn rqa(args: &RqaArgs, format: Format) -> CliResult<Output> {
    let mut config = RunConfig::new("rqa", format).with_embedding(&args.embedding)?;
    config.n = Some(args.n);
    config.lmin = Some(args.lmin);
    let (n, m) = (args.n, config.dim());
    let x = word_for(n, m)?;
    let report = rqa::quantify(&rplines::diagonal_histogram(&x, n, m)?, args.lmin)?;
    let limits = Limits::new(m, args.lmin);
    let rec = Record::new()
        .int("n", n)
        .int("m", m)
        .cell("eps", config.eps_cell())
        .int("lmin", args.lmin)
        .int("lmax", report.lmax);
    let mut table = Table::new();
    table.push(quantifier_cells(rec, &report, &limits));
    Ok(Output::Table { config: Box::new(config), table, oracle: limits.json() })
}

pub fn oracle(args: &OracleArgs, format: Format) -> CliResult<Output> {
    if args.lmin > args.lmax {
        return Err(CliError::Usage(format!("--lmin {} exceeds --lmax {}", args.lmin, args.lmax)));
    }
    let mut config = RunConfig::new("oracle", format).with_embedding(&args.embedding)?;
    config.lmin = Some(args.lmin);
    config.lmax = Some(args.lmax);
    let m = config.dim();
    let mut table = Table::new();
    for length in args.lmin..=args.lmax {
        let shifted = length + m - 1;
        let p = params(shifted);
        let class = match classify_length(shifted) {
            LengthClass::Pow2 { .. } => "pow2",
            LengthClass::ThreePow2 { .. } => "three_pow2",
            LengthClass::Other => "other",
        };
        let det_class = oracle::det_class(m, length).ok().map_or(Cell::Empty, |c| Cell::Text(format!("{c:?}")));
        table.push(
            Record::new()
                .int("m", m)
                .cell("eps", config.eps_cell())
                .int("length", length)
                .int("shifted_length", shifted)
                .cell("class", Cell::Text(class.into()))
                .int("k", p.k.into())
                .int("a", p.a.into())
                .cell("case", Cell::Text(format!("{:?}", p.case)))
                .exact("dens", Some(&oracle::dens(m, length)))
                .exact("denss", Some(&oracle::denss_asymptotic(shifted)))
                .exact("rr", Some(&oracle::rr(m, length)))
                .exact("det", Some(&oracle::det(m, length)))
                .exact("lavg", Some(&oracle::lavg(m, length)))
                .float("entropy_sum", Some(oracle::entropy_sum(shifted)))
                .cell("det_class", det_class),
        );
    }
    let oracle = json!({ "entr": oracle::entr(m, args.lmin), "vertical_lengths": oracle::vertical_lengths(m) });
    Ok(Output::Table { config: Box::new(config), table, oracle })
}

pub fn converge(args: &ConvergeArgs, format: Format) -> CliResult<Output> {
    let mut config = RunConfig::new("converge", format).with_embedding(&args.embedding)?;
    let schedule = &args.schedule;
    if schedule.is_empty() {
        return Err(CliError::Usage("empty schedule".into()));
    }
    if let Some(w) = schedule.windows(2).find(|w| w[0] >= w[1]) {
        return Err(CliError::Usage(format!("schedule must be strictly increasing ({} then {})", w[0], w[1])));
    }
    let floor = args.lmin.saturating_add(2).max(2);
    if let Some(&n) = schedule.iter().find(|&&n| n < floor) {
        return Err(CliError::Usage(format!(
            "n = {n} is below lmin + 2 = {floor}; no line of length {} fits",
            args.lmin
        )));
    }
    config.lmin = Some(args.lmin);
    config.schedule = Some(schedule.clone());
    config.lengths = Some(args.lengths.clone());
    let m = config.dim();
    let x = word_for(*schedule.last().unwrap(), m)?;
    let limits = Limits::new(m, args.lmin);
    let dens_limits: Vec<BigRational> = args.lengths.iter().map(|&l| oracle::dens(m, l)).collect();
    let mut table = Table::new();
    for &n in schedule {
        let report = rqa::quantify(&rplines::diagonal_histogram(&x, n, m)?, args.lmin)?;
        let rec = Record::new()
            .int("n", n)
            .int("m", m)
            .cell("eps", config.eps_cell())
            .int("lmin", args.lmin)
            .int("lmax", report.lmax);
        let mut rec = quantifier_cells(rec, &report, &limits);
        for (&l, limit) in args.lengths.iter().zip(&dens_limits) {
            let got = report.dens.get(&l).cloned().unwrap_or_else(BigRational::zero);
            rec = rec
                .exact(&format!("dens_{l}"), Some(&got))
                .exact(&format!("dens_{l}_oracle"), Some(limit))
                .float(format!("dens_{l}_err"), rel_err(Some(to_f64(&got)), to_f64(limit)));
        }
        table.push(rec);
    }
    let mut oracle = limits.json();
    oracle["dens"] = args
        .lengths
        .iter()
        .zip(&dens_limits)
        .map(|(l, q)| (l.to_string(), rational_json(q)))
        .collect::<serde_json::Map<_, _>>()
        .into();
    Ok(Output::Table { config: Box::new(config), table, oracle })
}
