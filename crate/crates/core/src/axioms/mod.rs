//! Axiom schemas and the randomized checking harness.
//!
//! An axiom is a chain of [`Pattern`]s over natural-number parameters and
//! network metavariables; instantiating the parameters and binding the
//! metavariables to terms yields ordinary [`Term`]s whose denotations are
//! compared in one of the semantic models.

mod catalog;
mod check;
mod gen;

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result, Sort, Term};

pub use catalog::axiom_catalog;
pub use check::{
    check_axiom, check_catalog, differential_suite, CheckConfig, DiffReport, Divergence, Model,
    Report,
};
pub use gen::{random_env, random_term, TermSpec};

pub type Params = BTreeMap<char, usize>;

/// Symbolic port count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Count {
    Lit(usize),
    Var(char),
    Sum(Vec<Count>),
}

impl Count {
    pub fn eval(&self, params: &Params) -> usize {
        match self {
            Count::Lit(n) => *n,
            Count::Var(v) => params[v],
            Count::Sum(parts) => parts.iter().map(|c| c.eval(params)).sum(),
        }
    }
}

impl From<usize> for Count {
    fn from(n: usize) -> Self {
        Count::Lit(n)
    }
}

impl From<char> for Count {
    fn from(v: char) -> Self {
        Count::Var(v)
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Lit(n) => write!(f, "{n}"),
            Count::Var(v) => write!(f, "{v}"),
            Count::Sum(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

/// Term schema with symbolic widths and metavariables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pattern {
    Par(Box<Pattern>, Box<Pattern>),
    Seq(Box<Pattern>, Box<Pattern>),
    Feed(Box<Pattern>, Count),
    Id(Count),
    Transp(Count, Count),
    Copy(Count),
    Sink(Count),
    EqTest(Count),
    Source(Count),
    Meta(&'static str),
}

impl Pattern {
    pub fn instantiate(&self, params: &Params, bind: &dyn Fn(&str) -> Term) -> Term {
        let go = |p: &Pattern| p.instantiate(params, bind);
        match self {
            Pattern::Par(a, b) => Term::par(go(a), go(b)),
            Pattern::Seq(a, b) => Term::seq(go(a), go(b)),
            Pattern::Feed(a, w) => Term::feed(go(a), w.eval(params)),
            Pattern::Id(c) => Term::Id(c.eval(params)),
            Pattern::Transp(a, b) => Term::Transp(a.eval(params), b.eval(params)),
            Pattern::Copy(c) => Term::Copy(c.eval(params)),
            Pattern::Sink(c) => Term::Sink(c.eval(params)),
            Pattern::EqTest(c) => Term::EqTest(c.eval(params)),
            Pattern::Source(c) => Term::DummySource(c.eval(params)),
            Pattern::Meta(name) => bind(name),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Pattern::Par(..) => 0,
            Pattern::Seq(..) => 1,
            _ => 2,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.fmt_prec(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Pattern::Par(a, b) => {
                a.fmt_prec(f, 0)?;
                f.write_str(" ++ ")?;
                b.fmt_prec(f, 1)
            }
            Pattern::Seq(a, b) => {
                a.fmt_prec(f, 1)?;
                f.write_str(" ; ")?;
                b.fmt_prec(f, 2)
            }
            Pattern::Feed(a, w) => {
                a.fmt_prec(f, 2)?;
                match w {
                    Count::Sum(_) => write!(f, " ^ ({w})"),
                    _ => write!(f, " ^ {w}"),
                }
            }
            Pattern::Id(c) => write!(f, "I({c})"),
            Pattern::Transp(a, b) => write!(f, "X({a},{b})"),
            Pattern::Copy(c) => write!(f, "cp({c})"),
            Pattern::Sink(c) => write!(f, "sink({c})"),
            Pattern::EqTest(c) => write!(f, "eq({c})"),
            Pattern::Source(c) => write!(f, "src({c})"),
            Pattern::Meta(name) => f.write_str(name),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    Holds,
    /// Invalid for synchronous networks; a counterexample is expected.
    FailsSynchronously,
}

/// Sort side condition `name : inputs -> outputs` of a metavariable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetaVar {
    pub name: &'static str,
    pub inputs: Count,
    pub outputs: Count,
}

impl MetaVar {
    pub fn sort(&self, params: &Params) -> Sort {
        Sort::new(self.inputs.eval(params), self.outputs.eval(params))
    }
}

/// Instances that are always part of the sample: fixed parameter values and
/// metavariable bindings, the rest drawn at random.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pin {
    pub params: Vec<(char, usize)>,
    pub bindings: Vec<(&'static str, Term)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Axiom {
    pub name: &'static str,
    pub table: u8,
    pub expected: Expectation,
    pub params: Vec<char>,
    pub metas: Vec<MetaVar>,
    /// Two or more expressions claimed equal.
    pub sides: Vec<Pattern>,
    pub pins: Vec<Pin>,
}

impl Axiom {
    pub fn lhs(&self) -> &Pattern {
        &self.sides[0]
    }

    pub fn rhs(&self) -> &Pattern {
        self.sides.last().expect("at least two sides")
    }

    pub fn has_branching(&self) -> bool {
        fn go(p: &Pattern) -> bool {
            match p {
                Pattern::Par(a, b) | Pattern::Seq(a, b) => go(a) || go(b),
                Pattern::Feed(a, _) => go(a),
                Pattern::Copy(_) | Pattern::Sink(_) | Pattern::EqTest(_) | Pattern::Source(_) => {
                    true
                }
                Pattern::Id(_) | Pattern::Transp(..) | Pattern::Meta(_) => false,
            }
        }
        self.sides.iter().any(go)
    }

    /// Instantiates every side with the metavariables left as cells of their
    /// declared sorts and checks that all sides agree, for all parameter
    /// values up to `bound`.
    pub fn check_sorts(&self, bound: usize) -> Result<()> {
        let mut params = Params::new();
        self.check_sorts_from(0, bound, &mut params)
    }

    fn check_sorts_from(&self, i: usize, bound: usize, params: &mut Params) -> Result<()> {
        if let Some(&v) = self.params.get(i) {
            for value in 0..=bound {
                params.insert(v, value);
                self.check_sorts_from(i + 1, bound, params)?;
            }
            return Ok(());
        }
        let lookup = |name: &str| {
            self.metas
                .iter()
                .find(|m| m.name == name)
                .map(|m| m.sort(params))
        };
        let ill = |detail: String| Error::IllSortedAxiom {
            axiom: self.name.into(),
            detail,
        };
        let mut first: Option<Sort> = None;
        for side in &self.sides {
            let t = side.instantiate(params, &|name| Term::cell(name));
            let s = t
                .sort_with(&lookup)
                .map_err(|e| ill(format!("{side} at {params:?}: {e}")))?;
            match first {
                None => first = Some(s),
                Some(f) if f != s => {
                    return Err(ill(format!(
                        "{side} has sort {s}, expected {f} at {params:?}"
                    )))
                }
                Some(_) => {}
            }
        }
        Ok(())
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, side) in self.sides.iter().enumerate() {
            if i > 0 {
                f.write_str(" = ")?;
            }
            write!(f, "{side}")?;
        }
        for (i, m) in self.metas.iter().enumerate() {
            f.write_str(if i == 0 { "  for " } else { ", " })?;
            write!(f, "{} : {} -> {}", m.name, m.inputs, m.outputs)?;
        }
        Ok(())
    }
}
