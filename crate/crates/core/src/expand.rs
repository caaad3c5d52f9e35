//! Block-extension expansion.
//!
//! Rewrites block constants and block feedback into their unit instances
//! using the defining equations of the block extensions: identities split by
//! `I(k) ++ I(l) = I(k+l)`, transpositions by `X(k,l+m) = (X(k,l) ++ I(m)) ;
//! (I(l) ++ X(k,m))` (and its mirror for the first argument), feedback by
//! `f ^ 0 = f` and `(f ^ l) ^ k = f ^ (k+l)`, and the branching constants by
//! their splitting equations.

use crate::Term;

/// Expands every block constant and block feedback. The result only uses
/// `Id(0)`, `Id(1)`, `Transp(1,1)`, the unit branching constants, `Feed(_, 1)`,
/// cells, `Par` and `Seq`.
pub fn expand_blocks(t: &Term) -> Term {
    match t {
        Term::Par(a, b) => Term::par(expand_blocks(a), expand_blocks(b)),
        Term::Seq(a, b) => Term::seq(expand_blocks(a), expand_blocks(b)),
        Term::Feed(body, width) => expand_feed(expand_blocks(body), *width),
        Term::Id(n) => identity(*n),
        Term::Transp(m, n) => transposition(*m, *n),
        Term::Copy(m) => copy(*m),
        Term::Sink(m) => split_unit(*m, Term::Sink(1)),
        Term::EqTest(m) => equality(*m),
        Term::DummySource(m) => split_unit(*m, Term::DummySource(1)),
        Term::Cell(_) => t.clone(),
    }
}

fn expand_feed(body: Term, width: usize) -> Term {
    // f ^ p = (f ^ 1) ^ (p-1): the innermost loop closes the last port.
    (0..width).fold(body, |acc, _| Term::feed(acc, 1))
}

fn identity(n: usize) -> Term {
    match n {
        0 | 1 => Term::Id(n),
        _ => Term::par(Term::Id(1), identity(n - 1)),
    }
}

/// `n` copies of a unit constant side by side, `Id(0)` for `n = 0`.
fn split_unit(n: usize, unit: Term) -> Term {
    match n {
        0 => Term::Id(0),
        1 => unit,
        _ => Term::par(unit.clone(), split_unit(n - 1, unit)),
    }
}

fn transposition(m: usize, n: usize) -> Term {
    match (m, n) {
        (0, k) | (k, 0) => identity(k),
        (1, 1) => Term::Transp(1, 1),
        // X(m, 1+r) = (X(m,1) ++ I(r)) ; (I(1) ++ X(m,r))
        (_, n) if n > 1 => Term::seq(
            Term::par(transposition(m, 1), identity(n - 1)),
            Term::par(Term::Id(1), transposition(m, n - 1)),
        ),
        // X(1+r, 1) = (I(1) ++ X(r,1)) ; (X(1,1) ++ I(r))
        (m, _) => Term::seq(
            Term::par(Term::Id(1), transposition(m - 1, 1)),
            Term::par(Term::Transp(1, 1), identity(m - 1)),
        ),
    }
}

fn copy(m: usize) -> Term {
    match m {
        0 => Term::Id(0),
        1 => Term::Copy(1),
        // cp(1+r) = (cp(1) ++ cp(r)) ; (I(1) ++ X(1,r) ++ I(r))
        _ => Term::seq(
            Term::par(Term::Copy(1), copy(m - 1)),
            Term::par(
                Term::par(Term::Id(1), transposition(1, m - 1)),
                identity(m - 1),
            ),
        ),
    }
}

fn equality(m: usize) -> Term {
    match m {
        0 => Term::Id(0),
        1 => Term::EqTest(1),
        // eq(1+r) = (I(1) ++ X(r,1) ++ I(r)) ; (eq(1) ++ eq(r))
        _ => Term::seq(
            Term::par(
                Term::par(Term::Id(1), transposition(m - 1, 1)),
                identity(m - 1),
            ),
            Term::par(Term::EqTest(1), equality(m - 1)),
        ),
    }
}

/// True if `t` is already in expanded form.
pub fn is_expanded(t: &Term) -> bool {
    match t {
        Term::Par(a, b) | Term::Seq(a, b) => is_expanded(a) && is_expanded(b),
        Term::Feed(body, w) => *w == 1 && is_expanded(body),
        Term::Id(n) => *n <= 1,
        Term::Transp(m, n) => *m == 1 && *n == 1,
        Term::Copy(m) | Term::Sink(m) | Term::EqTest(m) | Term::DummySource(m) => *m == 1,
        Term::Cell(_) => true,
    }
}
