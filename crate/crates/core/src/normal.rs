//! Normal forms `((I(m) ++ x_1 ++ .. ++ x_k) ; f) ^ (p_1 + .. + p_k)` with `f`
//! a wiring permutation, and equality of normal forms up to a renumbering of
//! the cells.
//!
//! Port numbering: the sources of the wiring are the `m` external inputs
//! followed by the outputs of each cell in order; its sinks are the `n`
//! external outputs followed by the inputs of each cell in order.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::{expand_blocks, CellEnv, Result, Sort, Term};

/// Reserved cell names standing for the unit branching constants. They cannot
/// clash with user cells since `#` is not an identifier character.
pub const COPY: &str = "#cp1";
pub const SINK: &str = "#sink1";
pub const EQ: &str = "#eq1";
pub const SOURCE: &str = "#src1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    pub external: Sort,
    pub cells: Vec<(String, Sort)>,
    /// `connection[source] = sink`; a bijection.
    pub connection: Vec<usize>,
    pub feed_width: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Port {
    Ext(usize),
    Cell(usize, usize),
}

impl NormalForm {
    fn from_parts(external: Sort, cells: Vec<(String, Sort)>, connection: Vec<usize>) -> Self {
        let feed_width = cells.iter().map(|(_, s)| s.inputs).sum();
        NormalForm {
            external,
            cells,
            connection,
            feed_width,
        }
    }

    fn identity(n: usize) -> Self {
        Self::from_parts(Sort::new(n, n), Vec::new(), (0..n).collect())
    }

    fn transposition(a: usize, b: usize) -> Self {
        let conn = (0..a).map(|i| b + i).chain(0..b).collect();
        Self::from_parts(Sort::new(a + b, b + a), Vec::new(), conn)
    }

    fn cell(name: String, sort: Sort) -> Self {
        let (p, q) = (sort.inputs, sort.outputs);
        let conn = (0..p).map(|i| q + i).chain(0..q).collect();
        Self::from_parts(Sort::new(p, q), vec![(name, sort)], conn)
    }

    /// Offsets of each cell's first output among the sources and first input
    /// among the sinks.
    fn offsets(&self) -> (Vec<usize>, Vec<usize>) {
        let (mut src, mut snk) = (Vec::new(), Vec::new());
        let (mut s, mut k) = (self.external.inputs, self.external.outputs);
        for (_, sort) in &self.cells {
            src.push(s);
            snk.push(k);
            s += sort.outputs;
            k += sort.inputs;
        }
        (src, snk)
    }

    fn source_port(&self, offsets: &[usize], i: usize) -> Port {
        if i < self.external.inputs {
            return Port::Ext(i);
        }
        let c = offsets.partition_point(|&o| o <= i) - 1;
        Port::Cell(c, i - offsets[c])
    }

    fn sink_port(&self, offsets: &[usize], i: usize) -> Port {
        if i < self.external.outputs {
            return Port::Ext(i);
        }
        let c = offsets.partition_point(|&o| o <= i) - 1;
        Port::Cell(c, i - offsets[c])
    }

    fn par(self, other: NormalForm) -> NormalForm {
        let (a, b) = (&self, &other);
        let (am, an) = (a.external.inputs, a.external.outputs);
        let (bm, bn) = (b.external.inputs, b.external.outputs);
        let a_cell_in: usize = a.feed_width;
        let a_cell_out = a.connection.len() - am;
        let b_cell_out = b.connection.len() - bm;
        // result sources: a ext, b ext, a cells, b cells; likewise sinks
        let map_a_sink = |k: usize| if k < an { k } else { k + bn };
        let map_b_sink = |k: usize| if k < bn { an + k } else { an + a_cell_in + k };
        let mut conn = Vec::with_capacity(a.connection.len() + b.connection.len());
        conn.extend(a.connection[..am].iter().map(|&k| map_a_sink(k)));
        conn.extend(b.connection[..bm].iter().map(|&k| map_b_sink(k)));
        conn.extend(a.connection[am..].iter().map(|&k| map_a_sink(k)));
        conn.extend(b.connection[bm..].iter().map(|&k| map_b_sink(k)));
        debug_assert_eq!(conn.len(), am + bm + a_cell_out + b_cell_out);
        let mut cells = self.cells;
        cells.extend(other.cells);
        NormalForm::from_parts(self.external + other.external, cells, conn)
    }

    fn seq(self, other: NormalForm) -> NormalForm {
        let (a, b) = (&self, &other);
        let (m, k, n) = (a.external.inputs, a.external.outputs, b.external.outputs);
        // result sinks: b ext (n), a cell inputs, b cell inputs
        let map_a = |s: usize| -> usize {
            let t = a.connection[s];
            if t < k {
                let u = b.connection[t];
                if u < n {
                    u
                } else {
                    u + a.feed_width
                }
            } else {
                n + (t - k)
            }
        };
        let map_b = |u: usize| if u < n { u } else { u + a.feed_width };
        let mut conn: Vec<usize> = (0..a.connection.len()).map(map_a).collect();
        conn.extend(b.connection[k..].iter().map(|&u| map_b(u)));
        debug_assert_eq!(conn[..m].len(), m);
        let mut cells = self.cells;
        cells.extend(other.cells);
        NormalForm::from_parts(Sort::new(m, n), cells, conn)
    }

    /// Closes the last external output onto the last external input.
    fn feed1(self) -> NormalForm {
        let (m1, n1) = (self.external.inputs, self.external.outputs);
        let (m, n) = (m1 - 1, n1 - 1);
        let looped = self.connection[m];
        let relabel = |t: usize| if t < n { t } else { t - 1 };
        let conn = self
            .connection
            .iter()
            .enumerate()
            .filter(|&(s, _)| s != m)
            .map(|(_, &t)| relabel(if t == n { looped } else { t }))
            .collect();
        NormalForm::from_parts(Sort::new(m, n), self.cells, conn)
    }
}

/// Normal form of a well-sorted term. Branching constants become reserved
/// cells, so equal terms by the branching axioms need not normalize alike.
pub fn to_normal_form(t: &Term, env: &CellEnv) -> Result<NormalForm> {
    t.sort_of(env)?;
    Ok(build(&expand_blocks(t), env))
}

fn build(t: &Term, env: &CellEnv) -> NormalForm {
    match t {
        Term::Par(a, b) => build(a, env).par(build(b, env)),
        Term::Seq(a, b) => build(a, env).seq(build(b, env)),
        Term::Feed(body, p) => (0..*p).fold(build(body, env), |nf, _| nf.feed1()),
        Term::Id(n) => NormalForm::identity(*n),
        Term::Transp(a, b) => NormalForm::transposition(*a, *b),
        Term::Copy(1) => NormalForm::cell(COPY.into(), Sort::new(1, 2)),
        Term::Sink(1) => NormalForm::cell(SINK.into(), Sort::new(1, 0)),
        Term::EqTest(1) => NormalForm::cell(EQ.into(), Sort::new(2, 1)),
        Term::DummySource(1) => NormalForm::cell(SOURCE.into(), Sort::new(0, 1)),
        Term::Cell(name) => {
            NormalForm::cell(name.clone(), env.cell(name).expect("sort-checked").sort)
        }
        other => unreachable!("not block-expanded: {other}"),
    }
}

fn cell_term(name: &str) -> Term {
    match name {
        COPY => Term::Copy(1),
        SINK => Term::Sink(1),
        EQ => Term::EqTest(1),
        SOURCE => Term::DummySource(1),
        _ => Term::cell(name),
    }
}

/// Wiring term sending input `i` to output `perm[i]`: an identity, a single
/// block transposition, or a sequence of adjacent swaps.
pub fn perm_term(perm: &[usize]) -> Term {
    let n = perm.len();
    if perm.iter().enumerate().all(|(i, &p)| i == p) {
        return Term::Id(n);
    }
    for a in 1..n {
        if perm
            .iter()
            .enumerate()
            .all(|(i, &p)| p == if i < a { n - a + i } else { i - a })
        {
            return Term::Transp(a, n - a);
        }
    }
    // bubble sort wires by their destination
    let mut key: Vec<usize> = perm.to_vec();
    let mut stages = Vec::new();
    let mut swapped = true;
    while swapped {
        swapped = false;
        for p in 0..n - 1 {
            if key[p] > key[p + 1] {
                key.swap(p, p + 1);
                let parts = [
                    (p > 0).then_some(Term::Id(p)),
                    Some(Term::Transp(1, 1)),
                    (p + 2 < n).then(|| Term::Id(n - p - 2)),
                ];
                stages.push(Term::par_all(parts.into_iter().flatten()).expect("nonempty"));
                swapped = true;
            }
        }
    }
    Term::seq_all(stages).expect("not the identity")
}

pub fn nf_to_term(nf: &NormalForm) -> Term {
    let mut parts = vec![Term::Id(nf.external.inputs)];
    parts.extend(nf.cells.iter().map(|(name, _)| cell_term(name)));
    let cells = Term::par_all(parts).expect("nonempty");
    Term::feed(Term::seq(cells, perm_term(&nf.connection)), nf.feed_width)
}

/// `t` rewritten into its normal-form term.
pub fn normalize(t: &Term, env: &CellEnv) -> Result<Term> {
    Ok(nf_to_term(&to_normal_form(t, env)?))
}

/// Equality up to a renumbering of the cells that preserves names and sorts.
pub fn iso_equal(a: &NormalForm, b: &NormalForm) -> bool {
    if a.external != b.external
        || a.connection.len() != b.connection.len()
        || a.cells.len() != b.cells.len()
    {
        return false;
    }
    let mut multiset: BTreeMap<(&str, Sort), isize> = BTreeMap::new();
    for (name, s) in &a.cells {
        *multiset.entry((name, *s)).or_default() += 1;
    }
    for (name, s) in &b.cells {
        *multiset.entry((name, *s)).or_default() -= 1;
    }
    if multiset.values().any(|&c| c != 0) {
        return false;
    }
    let m = Matcher::new(a, b);
    let mut map = vec![None; a.cells.len()];
    let mut used = vec![false; b.cells.len()];
    // seed with the external inputs and outputs
    let mut forced = Vec::new();
    for i in 0..a.external.inputs {
        forced.push((
            m.a.sink_port(&m.a_snk, a.connection[i]),
            m.b.sink_port(&m.b_snk, b.connection[i]),
        ));
    }
    for j in 0..a.external.outputs {
        forced.push((
            m.a.source_port(&m.a_src, m.a_inv[j]),
            m.b.source_port(&m.b_src, m.b_inv[j]),
        ));
    }
    m.search(&mut map, &mut used, forced)
}

struct Matcher<'a> {
    a: &'a NormalForm,
    b: &'a NormalForm,
    a_src: Vec<usize>,
    a_snk: Vec<usize>,
    b_src: Vec<usize>,
    b_snk: Vec<usize>,
    a_inv: Vec<usize>,
    b_inv: Vec<usize>,
}

fn inverse(conn: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; conn.len()];
    for (s, &t) in conn.iter().enumerate() {
        inv[t] = s;
    }
    inv
}

impl<'a> Matcher<'a> {
    fn new(a: &'a NormalForm, b: &'a NormalForm) -> Self {
        let (a_src, a_snk) = a.offsets();
        let (b_src, b_snk) = b.offsets();
        Matcher {
            a,
            b,
            a_src,
            a_snk,
            b_src,
            b_snk,
            a_inv: inverse(&a.connection),
            b_inv: inverse(&b.connection),
        }
    }

    /// Applies the forced port correspondences and their consequences, then
    /// branches on the first unmatched cell.
    fn search(
        &self,
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        forced: Vec<(Port, Port)>,
    ) -> bool {
        let saved = (map.clone(), used.clone());
        if self.propagate(map, used, forced) {
            match map.iter().position(Option::is_none) {
                None => return true,
                Some(c) => {
                    for d in 0..self.b.cells.len() {
                        if !used[d]
                            && self.a.cells[c] == self.b.cells[d]
                            && self.search(map, used, vec![(Port::Cell(c, 0), Port::Cell(d, 0))])
                        {
                            return true;
                        }
                    }
                }
            }
        }
        (*map, *used) = saved;
        false
    }

    fn propagate(
        &self,
        map: &mut [Option<usize>],
        used: &mut [bool],
        mut work: Vec<(Port, Port)>,
    ) -> bool {
        while let Some(pair) = work.pop() {
            let (c, d) = match pair {
                (Port::Ext(i), Port::Ext(j)) if i == j => continue,
                (Port::Cell(c, p), Port::Cell(d, q)) if p == q => (c, d),
                _ => return false,
            };
            match map[c] {
                Some(e) if e == d => continue,
                Some(_) => return false,
                None if used[d] || self.a.cells[c] != self.b.cells[d] => return false,
                None => {}
            }
            map[c] = Some(d);
            used[d] = true;
            let sort = self.a.cells[c].1;
            for p in 0..sort.outputs {
                let (sa, sb) = (self.a_src[c] + p, self.b_src[d] + p);
                work.push((
                    self.a.sink_port(&self.a_snk, self.a.connection[sa]),
                    self.b.sink_port(&self.b_snk, self.b.connection[sb]),
                ));
            }
            for p in 0..sort.inputs {
                let (ka, kb) = (self.a_snk[c] + p, self.b_snk[d] + p);
                work.push((
                    self.a.source_port(&self.a_src, self.a_inv[ka]),
                    self.b.source_port(&self.b_src, self.b_inv[kb]),
                ));
            }
        }
        true
    }
}
