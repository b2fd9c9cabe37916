//! Configuration, dispatch and report rendering for the `frobsplit` binary.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use frobsplit_core::builtins;
use frobsplit_core::frobdecomp::verify::{
    fpure_split_witness, hilbert_check, verify_all_perm_maps, HilbertRow, PermMapReport, SplitReport,
};
use frobsplit_core::frobdecomp::{decompose_monomial, empirical_signature, SignatureRow};
use frobsplit_core::fsing::{
    self, ClosureWitness, FedderReport, HypersurfacePresentation, MooreIdentity, PCubedReport, PresentationReport,
    SandwichReport,
};
use frobsplit_core::groups::detect_monomial;
use frobsplit_core::modrep::{counterexample_report, CounterexampleReport};
use frobsplit_core::poly::parse::parse_element;
use frobsplit_core::{
    parse_group, DecomposeOptions, DecompositionReport, FieldSpec, GroupInput, MatrixGroup, Rational64, DEFAULT_CAP,
};

/// Version of the JSON report layout.
pub const SCHEMA: u32 = 1;

/// Environment variable overriding the default group-order cap.
pub const CAP_ENV: &str = "FROBSPLIT_CAP";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Where a group comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupSource {
    Builtin { name: String, p: Option<u32> },
    File { path: PathBuf },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    Decompose {
        source: GroupSource,
        es: Vec<u32>,
        /// Check the summand maps, Hilbert series and splitting up to this degree.
        max_degree: Option<u32>,
        signature: bool,
    },
    Counterexample {
        alpha: String,
        max_e: u32,
    },
    MooreIdentity {
        p: u32,
    },
    Fedder {
        file: PathBuf,
    },
    Sandwich {
        p: u32,
    },
    Closure {
        p: u32,
    },
    PCubed {
        p: u32,
    },
    Presentation {
        file: Option<PathBuf>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub cap: usize,
    /// Worker threads; 0 uses all cores. Results do not depend on it.
    pub workers: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            cap: DEFAULT_CAP,
            workers: 1,
            format: Format::Text,
            out: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.cap == 0 {
            bail!("cap must be at least 1");
        }
        if let Command::Decompose { es, .. } = &self.command {
            if es.is_empty() {
                bail!("empty e range");
            }
        }
        Ok(())
    }
}

/// The cap from `FROBSPLIT_CAP` if set, else the default.
pub fn cap_from_env() -> Result<usize> {
    match std::env::var(CAP_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .with_context(|| format!("{CAP_ENV}={s} is not a positive integer")),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

/// Parses `3`, `1..3`, `1..=3`, `1-3` or `1,2,4`.
pub fn parse_e_range(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    let bad = || anyhow::anyhow!("bad e range `{s}`");
    let range = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .or_else(|| s.split_once('-'));
    if let Some((a, b)) = range {
        let a: u32 = a.trim().parse().map_err(|_| bad())?;
        let b: u32 = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub name: String,
    pub field: String,
    pub dimension: usize,
    pub order: usize,
    pub permutation: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub e: u32,
    pub max_degree: u32,
    pub perm_maps: Vec<PermMapReport>,
    pub hilbert: Vec<HilbertRow>,
    pub split: SplitReport,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecomposePayload {
    pub group: GroupSummary,
    pub runs: Vec<DecompositionReport>,
    pub verification: Vec<Verification>,
    pub signature: Option<Vec<SignatureRow>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    Decompose(DecomposePayload),
    Counterexample(CounterexampleReport),
    MooreIdentity(MooreIdentity),
    Fedder(FedderPayload),
    Sandwich(SandwichReport),
    Closure(ClosureWitness),
    PCubed(Box<PCubedReport>),
    Presentation(PresentationReport),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FedderPayload {
    pub vars: Vec<String>,
    pub weights: Vec<u32>,
    #[serde(with = "frobsplit_core::ratio")]
    pub a_invariant: Rational64,
    pub result: FedderReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    pub payload: Payload,
    pub passed: bool,
    pub timings: Timings,
}

impl Report {
    /// The JSON of the payload alone, which is independent of timing and workers.
    pub fn payload_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.payload)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => self.to_json().map(|mut s| {
                s.push('\n');
                s
            }),
            Format::Text => Ok(render_text(self)),
        }
    }
}

fn load_group(source: &GroupSource, cap: usize) -> Result<(String, MatrixGroup)> {
    let input: GroupInput = match source {
        GroupSource::Builtin { name, p } => builtins::builtin(name, *p)?,
        GroupSource::File { path } => {
            let text = read(path)?;
            parse_group(&text).with_context(|| format!("{}", path.display()))?
        }
    };
    let name = input.name.clone().unwrap_or_else(|| match source {
        GroupSource::Builtin { name, .. } => name.clone(),
        GroupSource::File { path } => path.display().to_string(),
    });
    let group = input.build(cap)?;
    Ok((name, group))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn run_decompose(
    source: &GroupSource,
    es: &[u32],
    max_degree: Option<u32>,
    signature: bool,
    cap: usize,
) -> Result<(Payload, bool)> {
    let (name, group) = load_group(source, cap)?;
    let mono = detect_monomial(&group)?;
    let opts = DecomposeOptions { workers: 0 };
    let mut runs = Vec::new();
    let mut verification = Vec::new();
    let mut passed = true;
    for &e in es {
        let d = decompose_monomial(&group, &mono, &name, e, opts)?;
        passed &= d.report.rank_check.passed;
        if let Some(max_degree) = max_degree {
            let perm_maps = verify_all_perm_maps(&group, &mono, &d.summands, e, max_degree)?;
            let hilbert = hilbert_check(&group, &mono, &d.summands, e, max_degree);
            let split = fpure_split_witness(&group, &mono, e, max_degree);
            let ok = perm_maps.iter().all(|r| r.passed) && hilbert.iter().all(|r| r.passed) && split.passed;
            passed &= ok;
            verification.push(Verification {
                e,
                max_degree,
                perm_maps,
                hilbert,
                split,
                passed: ok,
            });
        }
        runs.push(d.report);
    }
    let signature = if signature {
        Some(empirical_signature(&group, es, opts)?)
    } else {
        None
    };
    let payload = DecomposePayload {
        group: GroupSummary {
            name,
            field: group.field().to_string(),
            dimension: group.dimension(),
            order: group.order(),
            permutation: mono.is_permutation(),
        },
        runs,
        verification,
        signature,
    };
    Ok((Payload::Decompose(payload), passed))
}

fn dispatch(config: &RunConfig) -> Result<(Payload, bool)> {
    Ok(match &config.command {
        Command::Decompose {
            source,
            es,
            max_degree,
            signature,
        } => run_decompose(source, es, *max_degree, *signature, config.cap)?,
        Command::Counterexample { alpha, max_e } => {
            let field = FieldSpec::perfect_rational(3)?;
            let alpha = parse_element(field, alpha).context("--alpha")?;
            let r = counterexample_report(&alpha, *max_e)?;
            let ok = r.passed;
            (Payload::Counterexample(r), ok)
        }
        Command::MooreIdentity { p } => {
            let r = fsing::verify_moore_identity(*p)?;
            let ok = r.passed;
            (Payload::MooreIdentity(r), ok)
        }
        Command::Fedder { file } => {
            let text = read(file)?;
            let h = HypersurfacePresentation::parse(&text).with_context(|| format!("{}", file.display()))?;
            let result = fsing::fedder_test(&h);
            let payload = FedderPayload {
                vars: h.names().to_vec(),
                weights: h.weights().to_vec(),
                a_invariant: h.a_invariant(),
                result,
            };
            (Payload::Fedder(payload), true)
        }
        Command::Sandwich { p } => {
            let r = fsing::sandwich_check(*p)?;
            let ok = r.passed;
            (Payload::Sandwich(r), ok)
        }
        Command::Closure { p } => {
            let r = fsing::frobenius_closure_witness(*p)?;
            let ok = r.passed;
            (Payload::Closure(r), ok)
        }
        Command::PCubed { p } => {
            let r = fsing::p_cubed_suite(*p)?;
            let ok = r.passed;
            (Payload::PCubed(Box::new(r)), ok)
        }
        Command::Presentation { file } => {
            let r = match file {
                Some(path) => {
                    let text = read(path)?;
                    fsing::verify_presentation_text(&text).with_context(|| format!("{}", path.display()))?
                }
                None => fsing::verify_presentation_remark()?,
            };
            let ok = r.passed;
            (Payload::Presentation(r), ok)
        }
    })
}

/// Runs one command on a pool of `config.workers` threads.
pub fn run(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let start = Instant::now();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if config.workers > 0 {
        pool = pool.num_threads(config.workers);
    }
    let pool = pool.build().context("cannot start worker pool")?;
    let (payload, passed) = pool.install(|| dispatch(config))?;
    Ok(Report {
        schema: SCHEMA,
        tool: "frobsplit".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config: config.clone(),
        payload,
        passed,
        timings: Timings {
            total_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn yes(ok: bool) -> &'static str {
    if ok {
        "yes"
    } else {
        "no"
    }
}

fn shifts(v: &[Rational64]) -> String {
    const SHOW: usize = 6;
    let mut parts: Vec<String> = v.iter().take(SHOW).map(|r| r.to_string()).collect();
    if v.len() > SHOW {
        parts.push(format!("... ({} in all)", v.len()));
    }
    parts.join(", ")
}

fn render_decompose(out: &mut String, d: &DecomposePayload) {
    let g = &d.group;
    let kind = if g.permutation { "permutation" } else { "monomial" };
    let _ = writeln!(
        out,
        "group {}: order {} on {} variables over {} ({kind})",
        g.name, g.order, g.dimension, g.field
    );
    for r in &d.runs {
        let _ = writeln!(out, "\ne = {} (q = {}): {} classes", r.e, r.q, r.classes.len());
        for c in &r.classes {
            let _ = writeln!(
                out,
                "  {:<10} x {:<8} |H| = {:<3} {}  shifts: {}",
                c.name,
                c.multiplicity,
                c.stabilizer_order,
                c.label,
                shifts(&c.shifts)
            );
        }
        let rc = &r.rank_check;
        let _ = writeln!(
            out,
            "  rank: sum of orbit sizes {} = q^n {}: {}",
            rc.orbit_size_sum,
            rc.expected,
            verdict(rc.passed)
        );
    }
    for v in &d.verification {
        let maps = v.perm_maps.iter().filter(|r| r.passed).count();
        let _ = writeln!(out, "\nchecks for e = {} up to degree {}:", v.e, v.max_degree);
        let _ = writeln!(out, "  summand maps bijective: {maps}/{}", v.perm_maps.len());
        let hil = v.hilbert.iter().all(|r| r.passed);
        let _ = writeln!(
            out,
            "  graded dimensions agree in {} degrees: {}",
            v.hilbert.len(),
            verdict(hil)
        );
        let _ = writeln!(
            out,
            "  splitting (S^G)^(1/q) -> S^G: {} invariants, {} products: {}",
            v.split.invariants_checked,
            v.split.products_checked,
            verdict(v.split.passed)
        );
    }
    if let Some(sig) = &d.signature {
        let _ = writeln!(out, "\nsignature (multiplicity / q^n):");
        for row in sig {
            let free = row.free_ratio.map_or("-".to_string(), |f| format!("{f:.4}"));
            let _ = writeln!(out, "  e = {}: free {free}, 1/|G| = {:.4}", row.e, row.inverse_order);
        }
    }
}

fn render_counterexample(out: &mut String, r: &CounterexampleReport) {
    let s = &r.smallness;
    let small = match s.small {
        Some(true) => "small",
        Some(false) => "not small",
        None => "undecided",
    };
    let _ = writeln!(out, "alpha = {}: group order {}, {small}", r.alpha, r.order);
    let _ = writeln!(out, "  pseudoreflections: {}", s.pseudoreflections.len());
    let _ = writeln!(out, "  faithfulness: {:?}", s.faithfulness);
    let _ = writeln!(
        out,
        "  closed form for sigma^i tau^j, 9 pairs: {}",
        verdict(r.closed_form_passed)
    );
    let w = &r.witnesses;
    let _ = writeln!(out, "\nwitnesses for alpha = t, e = 0..{}:", w.max_e);
    for x in &w.witnesses {
        let ann = x.annihilator.as_deref().unwrap_or("(not principal)");
        let _ = writeln!(
            out,
            "  e = {}  shift {:<6} ann = ({ann})  socle {}  twist {}",
            x.e,
            x.shift.to_string(),
            x.socle_dim,
            yes(x.matches_twist)
        );
    }
    let _ = writeln!(out, "  pairwise distinct: {}", yes(w.pairwise_distinct));
}

fn render_p_cubed(out: &mut String, r: &PCubedReport) {
    let _ = writeln!(
        out,
        "p = {}: group order {} (p^3: {})",
        r.p,
        r.order,
        yes(r.order_is_p_cubed)
    );
    render_orbits(out, &r.orbit_products);
    render_identity(out, &r.identity);
    let _ = writeln!(
        out,
        "  Fedder: {}",
        if r.fedder.f_pure { "F-pure" } else { "not F-pure" }
    );
    render_closure(out, &r.closure);
    render_sandwich(out, &r.sandwich);
}

fn render_orbits(out: &mut String, o: &fsing::OrbitProducts) {
    let _ = writeln!(out, "  t = {}", o.t);
    let _ = writeln!(
        out,
        "  u, v: degrees {}, {}; Moore quotient = orbit product: {}; orbits as described: {}",
        o.u_degree,
        o.v_degree,
        yes(o.u_matches_product && o.v_matches_product),
        yes(o.orbits_match)
    );
    let _ = writeln!(
        out,
        "  invariant: u {}, v {}, t {}",
        yes(o.u_invariant),
        yes(o.v_invariant),
        yes(o.t_invariant)
    );
}

fn render_identity(out: &mut String, r: &MooreIdentity) {
    let _ = writeln!(out, "  determinant identity: {}", verdict(r.determinant_identity));
    let _ = writeln!(
        out,
        "  t^p - v x1^p - u x2^p = t w^(p-1): {}",
        verdict(r.hypersurface_identity)
    );
    let _ = writeln!(
        out,
        "  relation vanishes on (x1, x2, t, u, v): {}",
        verdict(r.relation_vanishes)
    );
}

fn render_closure(out: &mut String, c: &ClosureWitness) {
    let _ = writeln!(out, "  t in (x1, x2)C: {}", yes(c.t_in_ideal.is_member()));
    let _ = writeln!(
        out,
        "  t^p in (x1^p, x2^p)C: {}",
        c.tp_in_frobenius_power.certificate.as_deref().unwrap_or("no")
    );
}

fn render_sandwich(out: &mut String, s: &SandwichReport) {
    let _ = writeln!(out, "  A' = {}, B' = {}", s.a_prime, s.b_prime);
    let _ = writeln!(out, "  (i) u~, v~ invariant: {}", verdict(s.invariant));
    let _ = writeln!(
        out,
        "  (ii) t^p = v~ x1^p + u~ x2^p: {}",
        verdict(s.hypersurface_relation)
    );
    for g in &s.pth_powers {
        let lin = match g.linear_solve {
            Some(b) => format!(", linear solve {}", yes(b)),
            None => String::new(),
        };
        let _ = writeln!(out, "  (iii) {}^p in A: {}{lin}", g.generator, verdict(g.passed));
    }
    let _ = writeln!(
        out,
        "  (iv) Jacobian: {}; parameter system: {}",
        s.jacobian_verdict,
        yes(s.parameters)
    );
    let _ = writeln!(out, "  C = F_p[x1, x2, t, u~, v~]: {}", yes(s.same_subring));
}

fn render_presentation(out: &mut String, r: &PresentationReport) {
    let _ = writeln!(out, "over {}:", r.field);
    for g in &r.generators {
        let _ = writeln!(out, "  {} degree {}: invariant {}", g.name, g.degree, yes(g.invariant));
    }
    let _ = writeln!(
        out,
        "  product of factors {}, orbit product of x3 (size {}) {}",
        yes(r.product_matches_factors),
        r.orbit_size,
        yes(r.product_matches_orbit)
    );
    let _ = writeln!(
        out,
        "  relation ({} terms, degree {}) expands to 0: {}",
        r.relation_terms,
        r.relation_degree,
        yes(r.relation_vanishes)
    );
    let _ = writeln!(out, "  a-invariant: {}", r.a_invariant);
    let _ = writeln!(
        out,
        "  Fedder: {}",
        if r.fedder.f_pure { "F-pure" } else { "not F-pure" }
    );
}

fn render_text(report: &Report) -> String {
    let mut out = String::new();
    match &report.payload {
        Payload::Decompose(d) => render_decompose(&mut out, d),
        Payload::Counterexample(r) => render_counterexample(&mut out, r),
        Payload::MooreIdentity(r) => {
            let _ = writeln!(out, "p = {}:", r.p);
            render_identity(&mut out, r);
        }
        Payload::Fedder(f) => {
            let r = &f.result;
            let _ = writeln!(out, "F = {}", r.poly);
            let _ = writeln!(out, "  degree {}, a-invariant {}", r.degree, f.a_invariant);
            let _ = writeln!(
                out,
                "  F^(p-1) has {} terms; in Frobenius power: {}",
                r.power_terms,
                yes(r.in_frobenius_power)
            );
            if let Some(w) = &r.witness {
                let _ = writeln!(out, "  witness term: {w}");
            }
            let _ = writeln!(out, "  {}", if r.f_pure { "F-pure" } else { "not F-pure" });
        }
        Payload::Sandwich(s) => {
            let _ = writeln!(out, "p = {}:", s.p);
            render_sandwich(&mut out, s);
        }
        Payload::Closure(c) => {
            let _ = writeln!(out, "p = {}:", c.p);
            render_closure(&mut out, c);
        }
        Payload::PCubed(r) => render_p_cubed(&mut out, r),
        Payload::Presentation(r) => render_presentation(&mut out, r),
    }
    let _ = writeln!(out, "\n{} ({:.1} ms)", verdict(report.passed), report.timings.total_ms);
    out
}
