use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::Rng as _;

use super::gen::{generate, random_env, TermSpec};
use super::{axiom_catalog, Axiom, Expectation, Params};
use crate::normal::{nf_to_term, to_normal_form};
use crate::relmodel::{eval_rel, random_rel, FinRel};
use crate::rng::{rng_for, Rng};
use crate::stream::random_streams;
use crate::{procsim, streamsem, CellEnv, Result, Sort, Stream, Term, Trace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Model {
    Rel,
    Stream,
    Proc,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Rel => "rel",
            Model::Stream => "stream",
            Model::Proc => "proc",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckConfig {
    pub trials: usize,
    /// Carrier size for relations, data domain size for streams.
    pub domain_size: usize,
    pub horizon: usize,
    /// Parameters are drawn from `0..=max_param`.
    pub max_param: usize,
    /// Upper bound on either side of a metavariable's sort.
    pub max_meta_width: usize,
    /// Relation instances wider than this anywhere are redrawn.
    pub max_width: usize,
    /// Size budget for terms bound to metavariables.
    pub term_budget: usize,
    pub max_cells: usize,
}

impl CheckConfig {
    /// Defaults for a model: three ports per side for relations, two for the
    /// synchronous models.
    pub fn for_model(model: Model) -> Self {
        match model {
            Model::Rel => CheckConfig {
                trials: 200,
                domain_size: 2,
                horizon: 0,
                max_param: 3,
                max_meta_width: 3,
                max_width: 6,
                term_budget: 1,
                max_cells: 1,
            },
            Model::Stream | Model::Proc => CheckConfig {
                trials: 100,
                domain_size: 2,
                horizon: 16,
                max_param: 2,
                max_meta_width: 4,
                max_width: 8,
                term_budget: 7,
                max_cells: 3,
            },
        }
    }
}

/// Outcome of checking one axiom in one model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub axiom: String,
    pub model: Model,
    pub passed: bool,
    pub trials: usize,
    pub seed: u64,
    pub counterexample: Option<String>,
}

/// `AXIOM<TAB>model<TAB>PASS|FAIL<TAB>trials<TAB>seed[<TAB>counterexample]`.
impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}",
            self.axiom,
            self.model,
            if self.passed { "PASS" } else { "FAIL" },
            self.trials,
            self.seed
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, "\t{c}")?;
        }
        Ok(())
    }
}

fn name_hash(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

/// Instance of an axiom: parameter values and the metavariable bindings.
struct Instance {
    params: Params,
    bindings: BTreeMap<&'static str, Term>,
    sides: Vec<Term>,
}

impl Instance {
    fn describe(&self, trial: usize) -> String {
        let mut s = String::new();
        for (i, t) in self.sides.iter().enumerate() {
            if i > 0 {
                s.push_str(" = ");
            }
            s.push_str(&t.to_string());
        }
        s.push_str(&format!(" [trial {trial}"));
        for (k, v) in &self.params {
            s.push_str(&format!(", {k}={v}"));
        }
        for (name, t) in &self.bindings {
            s.push_str(&format!(", {name}:={t}"));
        }
        s.push(']');
        s
    }
}

fn max_width(t: &Term, lookup: &dyn Fn(&str) -> Option<Sort>) -> usize {
    let here = t
        .sort_with(lookup)
        .map_or(usize::MAX, |s| s.inputs.max(s.outputs));
    let below = match t {
        Term::Par(a, b) | Term::Seq(a, b) => max_width(a, lookup).max(max_width(b, lookup)),
        Term::Feed(a, _) => max_width(a, lookup),
        _ => 0,
    };
    here.max(below)
}

fn draw_params(ax: &Axiom, cfg: &CheckConfig, trial: usize, rng: &mut Rng) -> Params {
    let lo = match ax.expected {
        Expectation::Holds => 0,
        Expectation::FailsSynchronously => 1.min(cfg.max_param),
    };
    let mut params: Params = ax
        .params
        .iter()
        .map(|&v| (v, rng.gen_range(lo..=cfg.max_param)))
        .collect();
    if let Some(pin) = ax.pins.get(trial) {
        params.extend(pin.params.iter().copied());
    }
    params
}

fn metas_fit(ax: &Axiom, params: &Params, limit: usize) -> bool {
    ax.metas.iter().all(|m| {
        let s = m.sort(params);
        s.inputs.max(s.outputs) <= limit
    })
}

/// Checks `ax` in `model` on `cfg.trials` seeded instances.
pub fn check_axiom(ax: &Axiom, model: Model, cfg: &CheckConfig, seed: u64) -> Result<Report> {
    ax.check_sorts(3)?;
    let mut counterexample = None;
    let base = name_hash(ax.name) << 24;
    let env = random_env(cfg.domain_size, 2, seed ^ name_hash(ax.name));
    for trial in 0..cfg.trials {
        let mut rng = rng_for(seed, base ^ trial as u64);
        let found = match model {
            Model::Rel => rel_trial(ax, cfg, trial, &mut rng)?,
            Model::Stream | Model::Proc => sync_trial(ax, model, cfg, &env, trial, &mut rng)?,
        };
        if found.is_some() {
            counterexample = found;
            break;
        }
    }
    let passed = match ax.expected {
        Expectation::Holds => counterexample.is_none(),
        Expectation::FailsSynchronously => counterexample.is_some(),
    };
    Ok(Report {
        axiom: ax.name.into(),
        model,
        passed,
        trials: cfg.trials,
        seed,
        counterexample,
    })
}

const DENSITIES: [f64; 4] = [0.02, 0.1, 0.3, 0.6];

fn rel_trial(ax: &Axiom, cfg: &CheckConfig, trial: usize, rng: &mut Rng) -> Result<Option<String>> {
    let pin = ax.pins.get(trial);
    let mut instance = None;
    for _ in 0..64 {
        let params = draw_params(ax, cfg, trial, rng);
        if !metas_fit(ax, &params, cfg.max_meta_width) {
            continue;
        }
        let mut bindings: BTreeMap<&'static str, Term> = ax
            .metas
            .iter()
            .map(|m| (m.name, Term::cell(m.name)))
            .collect();
        if let Some(pin) = pin {
            bindings.extend(pin.bindings.iter().cloned());
        }
        let sides: Vec<Term> = ax
            .sides
            .iter()
            .map(|p| p.instantiate(&params, &|name| bindings[name].clone()))
            .collect();
        let lookup = |name: &str| {
            ax.metas
                .iter()
                .find(|m| m.name == name)
                .map(|m| m.sort(&params))
        };
        if sides.iter().all(|t| max_width(t, &lookup) <= cfg.max_width) {
            instance = Some(Instance {
                params,
                bindings,
                sides,
            });
            break;
        }
    }
    let Some(instance) = instance else {
        return Ok(None);
    };
    let mut rels: BTreeMap<String, FinRel> = BTreeMap::new();
    for m in &ax.metas {
        let density = *DENSITIES.choose(rng).expect("nonempty");
        let rel = random_rel(
            m.sort(&instance.params),
            cfg.domain_size,
            density,
            rng.gen(),
        );
        rels.insert(m.name.into(), rel);
    }
    let values = instance
        .sides
        .iter()
        .map(|t| eval_rel(t, &rels, cfg.domain_size))
        .collect::<Result<Vec<_>>>()?;
    if values.windows(2).all(|w| w[0] == w[1]) {
        Ok(None)
    } else {
        Ok(Some(instance.describe(trial)))
    }
}

fn run_model(
    model: Model,
    t: &Term,
    env: &CellEnv,
    inputs: &[Stream],
    horizon: usize,
) -> Result<Trace> {
    match model {
        Model::Stream => streamsem::trace(t, env, inputs, horizon),
        Model::Proc => procsim::trace(t, env, inputs, horizon),
        Model::Rel => unreachable!("relations have no traces"),
    }
}

fn format_inputs(inputs: &[Stream]) -> String {
    let streams: Vec<String> = inputs
        .iter()
        .map(|s| {
            let toks: Vec<String> = s
                .prefix()
                .iter()
                .map(|v| v.map_or("~".to_string(), |d| d.0.to_string()))
                .collect();
            toks.join(" ")
        })
        .collect();
    streams.join(" | ")
}

fn sync_trial(
    ax: &Axiom,
    model: Model,
    cfg: &CheckConfig,
    env: &CellEnv,
    trial: usize,
    rng: &mut Rng,
) -> Result<Option<String>> {
    let pin = ax.pins.get(trial);
    let mut params = draw_params(ax, cfg, trial, rng);
    for _ in 0..64 {
        if metas_fit(ax, &params, cfg.max_meta_width) {
            break;
        }
        params = draw_params(ax, cfg, trial, rng);
    }
    let mut bindings = BTreeMap::new();
    for m in &ax.metas {
        if let Some((_, t)) = pin.and_then(|p| p.bindings.iter().find(|(n, _)| *n == m.name)) {
            bindings.insert(m.name, t.clone());
            continue;
        }
        let spec = TermSpec {
            sort: m.sort(&params),
            budget: cfg.term_budget,
            max_width: 2,
            max_cells: cfg.max_cells,
            branching: true,
        };
        bindings.insert(m.name, generate(rng, &spec, env)?);
    }
    let sides: Vec<Term> = ax
        .sides
        .iter()
        .map(|p| p.instantiate(&params, &|name| bindings[name].clone()))
        .collect();
    let sort = sides[0].sort_of(env)?;
    let inputs = random_streams(rng, sort.inputs, cfg.horizon, cfg.domain_size, 0.7);
    let traces = sides
        .iter()
        .map(|t| run_model(model, t, env, &inputs, cfg.horizon))
        .collect::<Result<Vec<_>>>()?;
    if traces.windows(2).all(|w| w[0].observably_equal(&w[1])) {
        return Ok(None);
    }
    let instance = Instance {
        params,
        bindings,
        sides,
    };
    Ok(Some(format!(
        "{} on inputs ({})",
        instance.describe(trial),
        format_inputs(&inputs)
    )))
}

/// Checks every catalog axiom of the selected tables that the model can
/// interpret; relations only interpret the basic algebra.
pub fn check_catalog(
    model: Model,
    cfg: &CheckConfig,
    seed: u64,
    tables: &[u8],
) -> Result<Vec<Report>> {
    axiom_catalog()
        .iter()
        .filter(|ax| tables.is_empty() || tables.contains(&ax.table))
        .filter(|ax| model != Model::Rel || !ax.has_branching())
        .map(|ax| check_axiom(ax, model, cfg, seed))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    pub index: usize,
    /// `"stream/proc"` or `"normal-form"`.
    pub kind: &'static str,
    pub term: String,
    pub detail: String,
}

/// Outcome of [`differential_suite`]; instance `index` is regenerated from
/// `rng_for(seed, index)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffReport {
    pub count: usize,
    pub seed: u64,
    pub divergences: Vec<Divergence>,
}

impl fmt::Display for DiffReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "DIFF\t{}\t{}\t{}\t{}",
            if self.divergences.is_empty() {
                "PASS"
            } else {
                "FAIL"
            },
            self.count,
            self.seed,
            self.divergences.len()
        )?;
        for d in &self.divergences {
            writeln!(f, "{}\t{}\t{}\t{}", d.kind, d.index, d.term, d.detail)?;
        }
        Ok(())
    }
}

/// Random networks with at most five cells of at most three ports per side:
/// the stream model and the process simulator must agree exactly, and the
/// normal form must denote the same streams.
pub fn differential_suite(
    count: usize,
    size: usize,
    horizon: usize,
    seed: u64,
) -> Result<DiffReport> {
    let env = random_env(2, 3, seed);
    let mut divergences = Vec::new();
    for index in 0..count {
        let mut rng = rng_for(seed, 0x4449_4646_0000_0000 ^ index as u64);
        let sort = Sort::new(rng.gen_range(0..=3), rng.gen_range(0..=3));
        let spec = TermSpec {
            sort,
            budget: size,
            max_width: 3,
            max_cells: 5,
            branching: true,
        };
        let t = generate(&mut rng, &spec, &env)?;
        let inputs = random_streams(&mut rng, sort.inputs, horizon, env.domain_size(), 0.7);
        let s = streamsem::trace(&t, &env, &inputs, horizon)?;
        let p = procsim::trace(&t, &env, &inputs, horizon)?;
        if s != p {
            divergences.push(Divergence {
                index,
                kind: "stream/proc",
                term: t.to_string(),
                detail: format!("inputs ({}): {s:?} vs {p:?}", format_inputs(&inputs)),
            });
        }
        let nf = nf_to_term(&to_normal_form(&t, &env)?);
        let n = streamsem::trace(&nf, &env, &inputs, horizon)?;
        if !s.observably_equal(&n) {
            divergences.push(Divergence {
                index,
                kind: "normal-form",
                term: t.to_string(),
                detail: format!(
                    "normal form {nf} on ({}): {s:?} vs {n:?}",
                    format_inputs(&inputs)
                ),
            });
        }
    }
    Ok(DiffReport {
        count,
        seed,
        divergences,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find(name: &str) -> Axiom {
        axiom_catalog()
            .into_iter()
            .find(|a| a.name == name)
            .unwrap()
    }

    #[test]
    fn feedback_of_transposition_in_relations() {
        let cfg = CheckConfig {
            trials: 20,
            ..CheckConfig::for_model(Model::Rel)
        };
        let r = check_axiom(&find("F2"), Model::Rel, &cfg, 0).unwrap();
        assert!(r.passed, "{r}");
    }

    #[test]
    fn copy_then_test_is_identity_in_streams() {
        let cfg = CheckConfig {
            trials: 20,
            ..CheckConfig::for_model(Model::Stream)
        };
        let r = check_axiom(&find("A11"), Model::Stream, &cfg, 0).unwrap();
        assert!(r.passed, "{r}");
    }

    #[test]
    fn original_source_axiom_is_refuted() {
        let cfg = CheckConfig {
            trials: 10,
            ..CheckConfig::for_model(Model::Stream)
        };
        let r = check_axiom(&find("A3"), Model::Stream, &cfg, 0).unwrap();
        assert!(r.passed && r.counterexample.is_some(), "{r}");
        let line = r.to_string();
        assert!(line.starts_with("A3\tstream\tPASS\t10\t0\t"), "{line}");
    }

    #[test]
    fn report_line_without_counterexample() {
        let r = Report {
            axiom: "B7".into(),
            model: Model::Proc,
            passed: true,
            trials: 5,
            seed: 9,
            counterexample: None,
        };
        assert_eq!(r.to_string(), "B7\tproc\tPASS\t5\t9");
    }

    #[test]
    fn reports_are_reproducible() {
        let cfg = CheckConfig {
            trials: 5,
            ..CheckConfig::for_model(Model::Stream)
        };
        let ax = find("F5");
        assert_eq!(
            check_axiom(&ax, Model::Stream, &cfg, 3).unwrap(),
            check_axiom(&ax, Model::Stream, &cfg, 3).unwrap()
        );
    }

    #[test]
    fn small_differential_run() {
        let r = differential_suite(10, 9, 8, 1).unwrap();
        assert!(r.divergences.is_empty(), "{r}");
    }
}
