//! Derived feedback-like operators and the regular grid network.
//!
//! All constructions are syntactic: they return terms over the base signature,
//! with binary ramification instantiated as `cp` and binary identification as
//! `eq`.

use alloc::format;
use alloc::vec::Vec;

use crate::{CellEnv, Error, Result, Sort, Term};

/// Left feedback over the first `p` ports of `f : p+m -> p+n`:
/// `(X(m,p) ; f ; X(p,n)) ^ p`.
pub fn left_feed(f: Term, p: usize, sort: Sort) -> Result<Term> {
    if p > sort.max_feedback() {
        return Err(Error::FeedTooWide {
            term: format!("{f}"),
            width: p,
            sort,
        });
    }
    let (m, n) = (sort.inputs - p, sort.outputs - p);
    Ok(Term::feed(
        Term::seq(Term::seq(Term::Transp(m, p), f), Term::Transp(p, n)),
        p,
    ))
}

fn expect_sort(f: &Term, env: &CellEnv, ok: impl Fn(Sort) -> bool, what: &str) -> Result<Sort> {
    let sort = f.sort_of(env)?;
    if ok(sort) {
        Ok(sort)
    } else {
        Err(Error::SortMismatch {
            term: format!("{f} (expected {what})"),
            left: sort,
            right: sort,
        })
    }
}

/// Unary star of `f : 1 -> 1`:
/// `cp(1) ; (I(1) ++ (eq(1) ; f ; cp(1)) ^ 1) ; eq(1)`.
pub fn star(f: Term, env: &CellEnv) -> Result<Term> {
    expect_sort(&f, env, |s| s == Sort::new(1, 1), "1 -> 1")?;
    Ok(Term::seq_all([
        Term::Copy(1),
        Term::par(Term::Id(1), Term::feed(loop_body(f), 1)),
        Term::EqTest(1),
    ])
    .expect("nonempty"))
}

fn loop_body(f: Term) -> Term {
    Term::seq(Term::seq(Term::EqTest(1), f), Term::Copy(1))
}

/// Binary star of `f, g : 1 -> 1`: like [`star`] but with a left feedback
/// around the loop and `g` appended.
pub fn binary_star(f: Term, g: Term, env: &CellEnv) -> Result<Term> {
    expect_sort(&f, env, |s| s == Sort::new(1, 1), "1 -> 1")?;
    expect_sort(&g, env, |s| s == Sort::new(1, 1), "1 -> 1")?;
    let looped = left_feed(loop_body(f), 1, Sort::new(2, 2))?;
    Ok(Term::seq_all([
        Term::Copy(1),
        Term::par(Term::Id(1), looped),
        Term::EqTest(1),
        g,
    ])
    .expect("nonempty"))
}

/// Iteration of `f : m -> m+n`: left feedback of `eq(m) ; f` over `m` ports.
pub fn dagger(f: Term, env: &CellEnv) -> Result<Term> {
    let sort = f.sort_of(env)?;
    let m = sort.inputs;
    if sort.outputs < m {
        return Err(Error::SortMismatch {
            term: format!("{f} (expected m -> m+n)"),
            left: sort,
            right: sort,
        });
    }
    let body = Term::seq(Term::EqTest(m), f);
    left_feed(body, m, Sort::new(2 * m, sort.outputs))
}

/// Feedback `mu` of `f : n+m -> m`: `(f ; cp(m)) ^ m`.
pub fn mu(f: Term, env: &CellEnv) -> Result<Term> {
    let sort = f.sort_of(env)?;
    let m = sort.outputs;
    if sort.inputs < m {
        return Err(Error::SortMismatch {
            term: format!("{f} (expected n+m -> m)"),
            left: sort,
            right: sort,
        });
    }
    Ok(Term::feed(Term::seq(f, Term::Copy(m)), m))
}

/// `k`-ary ramification from the binary and nullary instances:
/// `rmf(0) = sink(1)`, `rmf(k+1) = cp(1) ; (rmf(k) ++ I(1))`.
pub fn ramification(k: usize) -> Term {
    (0..k).fold(Term::Sink(1), |acc, _| {
        Term::seq(Term::Copy(1), Term::par(acc, Term::Id(1)))
    })
}

/// `k`-ary identification: `idf(0) = src(1)`, `idf(k+1) = (idf(k) ++ I(1)) ; eq(1)`.
pub fn identification(k: usize) -> Term {
    (0..k).fold(Term::DummySource(1), |acc, _| {
        Term::seq(Term::par(acc, Term::Id(1)), Term::EqTest(1))
    })
}

/// The regular network `r_{k,l}` over a `2 -> 2` cell, unfolded literally
/// from its iterated-composition definition: `k-1` widening stages, `l-k+1`
/// full stages of `k` cells, `k-1` narrowing stages, then `X(l,k)`, all
/// closed by `l` feedback loops.
pub fn build_regular(k: usize, l: usize, cell: &str, env: &CellEnv) -> Result<Term> {
    if k == 0 || k >= l {
        return Err(Error::BadShape(format!(
            "regular network needs 0 < k < l, got k={k}, l={l}"
        )));
    }
    match env.cell(cell) {
        Some(def) if def.sort == Sort::new(2, 2) => {}
        Some(def) => {
            return Err(Error::BadShape(format!(
                "cell `{cell}` has sort {}, expected 2 -> 2",
                def.sort
            )))
        }
        None => return Err(Error::UnboundCell(cell.into())),
    }
    let f = || Term::cell(cell);
    // I(a) ++ f ++ ... ++ f (count times) ++ I(b), left-nested
    let stage = |a: usize, count: usize, b: usize| {
        let mut parts = Vec::with_capacity(count + 2);
        parts.push(Term::Id(a));
        parts.extend((0..count).map(|_| f()));
        parts.push(Term::Id(b));
        Term::par_all(parts).expect("nonempty")
    };
    let mut stages = Vec::new();
    stages.extend((1..k).map(|i| stage(k - i, i, l - i)));
    stages.extend((0..=l - k).map(|i| stage(i, k, l - k - i)));
    stages.extend((1..k).rev().map(|i| stage(l - i, i, k - i)));
    stages.push(Term::Transp(l, k));
    Ok(Term::feed(Term::seq_all(stages).expect("nonempty"), l))
}

/// Cell occurrences of `r_{k,l}`: `2 * (1 + ... + (k-1)) + (l-k+1) * k`.
pub fn regular_cell_count(k: usize, l: usize) -> usize {
    k * (k - 1) + (l - k + 1) * k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{CellDef, Datum};
    use alloc::vec;

    fn env() -> CellEnv {
        let mut env = CellEnv::succ_mod(4);
        let f = CellDef::from_fn(Sort::new(2, 2), 4, vec![Datum(0), Datum(0)], |x| {
            vec![x[1], x[0]]
        })
        .unwrap();
        env.insert("f".into(), f).unwrap();
        let g = CellDef::from_fn(Sort::new(1, 2), 4, vec![Datum(0), Datum(1)], |x| {
            vec![x[0], x[0]]
        })
        .unwrap();
        env.insert("g".into(), g).unwrap();
        env
    }

    #[test]
    fn left_feed_of_transposition() {
        let t = left_feed(Term::Transp(1, 1), 1, Sort::new(2, 2)).unwrap();
        let expected = Term::feed(
            Term::seq(
                Term::seq(Term::Transp(1, 1), Term::Transp(1, 1)),
                Term::Transp(1, 1),
            ),
            1,
        );
        assert_eq!(t, expected);
    }

    #[test]
    fn dagger_is_left_feedback_of_eq_then_f() {
        let env = env();
        let t = dagger(Term::cell("g"), &env).unwrap();
        let body = Term::seq(Term::EqTest(1), Term::cell("g"));
        let expected = Term::feed(
            Term::seq(Term::seq(Term::Transp(1, 1), body), Term::Transp(1, 1)),
            1,
        );
        assert_eq!(t, expected);
        assert_eq!(t.sort_of(&env).unwrap(), Sort::new(1, 1));
    }

    #[test]
    fn star_sorts() {
        let env = env();
        assert_eq!(
            star(Term::Id(1), &env).unwrap().sort_of(&env).unwrap(),
            Sort::new(1, 1)
        );
        let b = binary_star(Term::cell("succ4"), Term::Id(1), &env).unwrap();
        assert_eq!(b.sort_of(&env).unwrap(), Sort::new(1, 1));
        assert!(star(Term::Id(2), &env).is_err());
    }

    #[test]
    fn mu_sort() {
        let env = env();
        let t = mu(Term::EqTest(1), &env).unwrap();
        assert_eq!(t.sort_of(&env).unwrap(), Sort::new(1, 1));
    }

    #[test]
    fn ramification_and_identification_sorts() {
        let env = CellEnv::default();
        for k in 0..5 {
            assert_eq!(ramification(k).sort_of(&env).unwrap(), Sort::new(1, k));
            assert_eq!(identification(k).sort_of(&env).unwrap(), Sort::new(k, 1));
        }
    }

    #[test]
    fn regular_three_four() {
        let env = env();
        let r = build_regular(3, 4, "f", &env).unwrap();
        assert_eq!(r.count_cell("f"), 12);
        // l feedback loops close over a (k+l)-wide body: k inputs, k outputs.
        assert_eq!(r.sort_of(&env).unwrap(), Sort::new(3, 3));
    }

    #[test]
    fn regular_cell_count_formula() {
        let env = env();
        for k in 1..5 {
            for l in k + 1..7 {
                let r = build_regular(k, l, "f", &env).unwrap();
                let by_sum = (1..k).sum::<usize>() * 2 + (l - k + 1) * k;
                assert_eq!(r.count_cell("f"), by_sum);
                assert_eq!(regular_cell_count(k, l), by_sum);
                r.sort_of(&env).unwrap();
            }
        }
    }

    #[test]
    fn regular_bad_shapes() {
        let env = env();
        assert!(matches!(
            build_regular(2, 2, "f", &env),
            Err(Error::BadShape(_))
        ));
        assert!(matches!(
            build_regular(1, 3, "succ4", &env),
            Err(Error::BadShape(_))
        ));
        assert!(matches!(
            build_regular(1, 3, "nope", &env),
            Err(Error::UnboundCell(_))
        ));
    }
}
