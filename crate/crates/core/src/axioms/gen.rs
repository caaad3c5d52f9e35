use alloc::format;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::rng::rng_for;
use crate::{CellDef, CellEnv, Datum, Error, Result, Sort, Term};

/// Constraints on a generated term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TermSpec {
    pub sort: Sort,
    /// Upper bound on [`Term::size`].
    pub budget: usize,
    /// Upper bound on the width of intermediate connections and feedbacks.
    pub max_width: usize,
    pub max_cells: usize,
    /// Whether `cp`, `sink`, `eq` and `src` may occur.
    pub branching: bool,
}

impl TermSpec {
    pub fn new(sort: Sort, budget: usize) -> Self {
        TermSpec {
            sort,
            budget,
            max_width: 3,
            max_cells: usize::MAX,
            branching: true,
        }
    }
}

/// A well-sorted term within the spec, deterministic per seed.
pub fn random_term(spec: &TermSpec, env: &CellEnv, seed: u64) -> Result<Term> {
    let mut rng = rng_for(seed, 0x5445_524d);
    generate(&mut rng, spec, env)
}

pub(crate) fn generate(rng: &mut impl Rng, spec: &TermSpec, env: &CellEnv) -> Result<Term> {
    let cells: Vec<(&str, Sort)> = env.cells().map(|(n, d)| (n, d.sort)).collect();
    let mut g = Gen {
        rng,
        spec,
        cells,
        cells_left: spec.max_cells,
    };
    g.term(spec.sort, spec.budget).ok_or(Error::Unsatisfiable {
        sort: spec.sort,
        budget: spec.budget,
    })
}

struct Gen<'a, R> {
    rng: &'a mut R,
    spec: &'a TermSpec,
    cells: Vec<(&'a str, Sort)>,
    cells_left: usize,
}

impl<R: Rng> Gen<'_, R> {
    fn atoms(&self, sort: Sort) -> Vec<Term> {
        let (m, n) = (sort.inputs, sort.outputs);
        let mut out = Vec::new();
        if m == n {
            out.push(Term::Id(m));
            out.extend((1..m).map(|a| Term::Transp(a, m - a)));
        }
        if self.spec.branching {
            if n == 2 * m {
                out.push(Term::Copy(m));
            }
            if n == 0 {
                out.push(Term::Sink(m));
            }
            if m == 2 * n {
                out.push(Term::EqTest(n));
            }
            if m == 0 {
                out.push(Term::DummySource(n));
            }
        }
        if self.cells_left > 0 {
            for &(name, s) in &self.cells {
                if s == sort {
                    // cells are drawn twice as often as a single constant
                    out.push(Term::cell(name));
                    out.push(Term::cell(name));
                }
            }
        }
        out
    }

    fn take_atom(&mut self, sort: Sort) -> Option<Term> {
        let atoms = self.atoms(sort);
        let t = atoms.choose(self.rng)?.clone();
        if matches!(t, Term::Cell(_)) {
            self.cells_left -= 1;
        }
        Some(t)
    }

    fn term(&mut self, sort: Sort, budget: usize) -> Option<Term> {
        if budget == 0 {
            return None;
        }
        let composite = match budget {
            1 => false,
            2 => self.rng.gen_bool(0.3),
            _ => self.rng.gen_bool(0.7),
        };
        if composite {
            for _ in 0..2 {
                let saved = self.cells_left;
                if let Some(t) = self.composite(sort, budget) {
                    return Some(t);
                }
                self.cells_left = saved;
            }
        }
        if let Some(t) = self.take_atom(sort) {
            return Some(t);
        }
        if self.spec.branching && budget >= 3 {
            return Some(Term::seq(
                Term::Sink(sort.inputs),
                Term::DummySource(sort.outputs),
            ));
        }
        if !composite && budget >= 2 {
            let saved = self.cells_left;
            if let Some(t) = self.composite(sort, budget) {
                return Some(t);
            }
            self.cells_left = saved;
        }
        None
    }

    fn composite(&mut self, sort: Sort, budget: usize) -> Option<Term> {
        let w = self.spec.max_width;
        let choice = if budget >= 3 {
            self.rng.gen_range(0..5)
        } else {
            4
        };
        match choice {
            0 | 1 => {
                let b1 = self.rng.gen_range(1..=budget - 2);
                let b2 = budget - 1 - b1;
                let m1 = self.rng.gen_range(0..=sort.inputs);
                let n1 = self.rng.gen_range(0..=sort.outputs);
                let a = self.term(Sort::new(m1, n1), b1)?;
                let b = self.term(Sort::new(sort.inputs - m1, sort.outputs - n1), b2)?;
                Some(Term::par(a, b))
            }
            2 | 3 => {
                let b1 = self.rng.gen_range(1..=budget - 2);
                let b2 = budget - 1 - b1;
                let k = self.rng.gen_range(0..=w);
                let a = self.term(Sort::new(sort.inputs, k), b1)?;
                let b = self.term(Sort::new(k, sort.outputs), b2)?;
                Some(Term::seq(a, b))
            }
            _ => {
                let p = self.rng.gen_range(1..=w.clamp(1, 2));
                let body = self.term(Sort::new(sort.inputs + p, sort.outputs + p), budget - 1)?;
                Some(Term::feed(body, p))
            }
        }
    }
}

/// Cells `c{m}x{n}_{j}` of every sort `m -> n` with `m, n <= max_ports`
/// (except `0 -> 0`), two per sort, with random tables and initial tuples.
pub fn random_env(domain_size: usize, max_ports: usize, seed: u64) -> CellEnv {
    let mut rng = rng_for(seed, 0x454e_5600);
    let mut env = CellEnv::numeric(domain_size).expect("nonempty domain");
    let datum = |rng: &mut crate::rng::Rng| Datum(rng.gen_range(0..domain_size) as u16);
    for m in 0..=max_ports {
        for n in 0..=max_ports {
            if m == 0 && n == 0 {
                continue;
            }
            for j in 0..2 {
                let init = (0..n).map(|_| datum(&mut rng)).collect();
                let def = CellDef::from_fn(Sort::new(m, n), domain_size, init, |_| {
                    (0..n).map(|_| datum(&mut rng)).collect()
                })
                .expect("well-formed random cell");
                env.insert(format!("c{m}x{n}_{j}"), def)
                    .expect("fresh name");
            }
        }
    }
    env
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let env = random_env(2, 2, 3);
        assert_eq!(env, random_env(2, 2, 3));
        let spec = TermSpec::new(Sort::new(2, 1), 9);
        assert_eq!(
            random_term(&spec, &env, 11).unwrap(),
            random_term(&spec, &env, 11).unwrap()
        );
    }

    #[test]
    fn budget_one_is_an_atom() {
        let env = random_env(2, 2, 0);
        for seed in 0..50 {
            let t = random_term(&TermSpec::new(Sort::new(1, 1), 1), &env, seed).unwrap();
            assert!(
                t == Term::Id(1) || matches!(&t, Term::Cell(n) if n.starts_with("c1x1")),
                "{t}"
            );
        }
    }

    #[test]
    fn samples_are_well_sorted_and_within_budget() {
        let env = random_env(2, 2, 5);
        for seed in 0..1000 {
            let sort = Sort::new((seed % 4) as usize, (seed / 4 % 4) as usize);
            let mut spec = TermSpec::new(sort, 3 + (seed % 9) as usize);
            spec.max_cells = 3;
            let t = random_term(&spec, &env, seed).unwrap();
            assert_eq!(t.sort_of(&env).unwrap(), sort, "{t}");
            assert!(t.size() <= spec.budget);
            assert!(t.cell_count() <= 3);
        }
    }

    #[test]
    fn unsatisfiable_without_branching() {
        let env = CellEnv::numeric(2).unwrap();
        let mut spec = TermSpec::new(Sort::new(1, 2), 5);
        spec.branching = false;
        assert!(matches!(
            random_term(&spec, &env, 0),
            Err(Error::Unsatisfiable { .. })
        ));
    }
}
