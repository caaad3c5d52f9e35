//! Finite data-transforming relations.
//!
//! A network `m -> n` denotes a relation between `S^m` and `S^n` for a finite
//! carrier `S = {0, .., carrier-1}`. The five operations are interpreted by
//! their set clauses literally; branching constants have no interpretation.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use rand::Rng as _;

use crate::rng::rng_for;
use crate::{Error, Result, Sort, Term};

pub type Tuple = Vec<u8>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinRel {
    pub sort: Sort,
    pub carrier: usize,
    pub pairs: BTreeSet<(Tuple, Tuple)>,
}

/// All tuples of `S^len` in lexicographic order.
pub fn tuples(carrier: usize, len: usize) -> Vec<Tuple> {
    let mut out = Vec::new();
    let mut cur = alloc::vec![0u8; len];
    if len > 0 && carrier == 0 {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if (cur[i] as usize) < carrier {
                break;
            }
            cur[i] = 0;
        }
    }
}

fn concat(a: &[u8], b: &[u8]) -> Tuple {
    let mut v = Vec::with_capacity(a.len() + b.len());
    v.extend_from_slice(a);
    v.extend_from_slice(b);
    v
}

impl FinRel {
    pub fn empty(sort: Sort, carrier: usize) -> Self {
        FinRel {
            sort,
            carrier,
            pairs: BTreeSet::new(),
        }
    }

    pub fn full(sort: Sort, carrier: usize) -> Self {
        let ys = tuples(carrier, sort.outputs);
        let pairs = tuples(carrier, sort.inputs)
            .into_iter()
            .flat_map(|x| ys.iter().map(move |y| (x.clone(), y.clone())))
            .collect();
        FinRel {
            sort,
            carrier,
            pairs,
        }
    }

    pub fn identity(n: usize, carrier: usize) -> Self {
        let pairs = tuples(carrier, n)
            .into_iter()
            .map(|x| (x.clone(), x))
            .collect();
        FinRel {
            sort: Sort::new(n, n),
            carrier,
            pairs,
        }
    }

    pub fn transposition(m: usize, n: usize, carrier: usize) -> Self {
        let ys = tuples(carrier, n);
        let pairs = tuples(carrier, m)
            .into_iter()
            .flat_map(|x| ys.iter().map(move |y| (concat(&x, y), concat(y, &x))))
            .collect();
        FinRel {
            sort: Sort::new(m + n, n + m),
            carrier,
            pairs,
        }
    }

    /// `{(x1 x2, y1 y2) | (x1,y1) in self, (x2,y2) in other}`.
    pub fn par(&self, other: &FinRel) -> FinRel {
        let pairs = self
            .pairs
            .iter()
            .flat_map(|(x1, y1)| {
                other
                    .pairs
                    .iter()
                    .map(move |(x2, y2)| (concat(x1, x2), concat(y1, y2)))
            })
            .collect();
        FinRel {
            sort: self.sort + other.sort,
            carrier: self.carrier,
            pairs,
        }
    }

    /// `{(x, y) | exists z: (x,z) in self, (z,y) in other}`.
    pub fn seq(&self, other: &FinRel) -> FinRel {
        let mut by_input: BTreeMap<&Tuple, Vec<&Tuple>> = BTreeMap::new();
        for (z, y) in &other.pairs {
            by_input.entry(z).or_default().push(y);
        }
        let mut pairs = BTreeSet::new();
        for (x, z) in &self.pairs {
            for y in by_input.get(z).into_iter().flatten() {
                pairs.insert((x.clone(), (*y).clone()));
            }
        }
        FinRel {
            sort: Sort::new(self.sort.inputs, other.sort.outputs),
            carrier: self.carrier,
            pairs,
        }
    }

    /// `{(x, y) | exists z in S^p: (x z, y z) in self}`.
    pub fn feed(&self, p: usize) -> FinRel {
        let (m, n) = (self.sort.inputs - p, self.sort.outputs - p);
        let pairs = self
            .pairs
            .iter()
            .filter(|(x, y)| x[m..] == y[n..])
            .map(|(x, y)| (x[..m].to_vec(), y[..n].to_vec()))
            .collect();
        FinRel {
            sort: Sort::new(m, n),
            carrier: self.carrier,
            pairs,
        }
    }

    pub fn is_subset(&self, other: &FinRel) -> bool {
        self.pairs.is_subset(&other.pairs)
    }
}

/// Interprets `t` with cells bound to relations over `S = {0, .., carrier-1}`.
pub fn eval_rel(
    t: &Term,
    env: &BTreeMap<alloc::string::String, FinRel>,
    carrier: usize,
) -> Result<FinRel> {
    t.sort_with(&|name| env.get(name).map(|r| r.sort))?;
    eval(t, env, carrier)
}

fn eval(t: &Term, env: &BTreeMap<alloc::string::String, FinRel>, carrier: usize) -> Result<FinRel> {
    Ok(match t {
        Term::Par(a, b) => eval(a, env, carrier)?.par(&eval(b, env, carrier)?),
        Term::Seq(a, b) => eval(a, env, carrier)?.seq(&eval(b, env, carrier)?),
        Term::Feed(body, p) => eval(body, env, carrier)?.feed(*p),
        Term::Id(n) => FinRel::identity(*n, carrier),
        Term::Transp(m, n) => FinRel::transposition(*m, *n, carrier),
        Term::Cell(name) => {
            let r = env
                .get(name)
                .ok_or_else(|| Error::UnboundCell(name.clone()))?;
            if r.carrier != carrier {
                return Err(Error::BadShape(format!(
                    "relation `{name}` is over a carrier of size {}, expected {carrier}",
                    r.carrier
                )));
            }
            r.clone()
        }
        Term::Copy(_) | Term::Sink(_) | Term::EqTest(_) | Term::DummySource(_) => {
            return Err(Error::UnsupportedConstant(format!("{t}")))
        }
    })
}

/// Each pair of `S^m x S^n` is included independently with probability
/// `density`.
pub fn random_rel(sort: Sort, carrier: usize, density: f64, seed: u64) -> FinRel {
    let mut rng = rng_for(seed, 0x5245_4c00);
    let mut rel = FinRel::full(sort, carrier);
    rel.pairs.retain(|_| rng.gen_bool(density));
    rel
}
