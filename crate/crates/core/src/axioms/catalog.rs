use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use super::{Axiom, Count, Expectation, MetaVar, Pattern, Pin};
use crate::Term;

fn c(x: impl Into<Count>) -> Count {
    x.into()
}

fn sum(a: impl Into<Count>, b: impl Into<Count>) -> Count {
    Count::Sum(vec![a.into(), b.into()])
}

fn id(x: impl Into<Count>) -> Pattern {
    Pattern::Id(x.into())
}

fn tr(a: impl Into<Count>, b: impl Into<Count>) -> Pattern {
    Pattern::Transp(a.into(), b.into())
}

fn cp(x: impl Into<Count>) -> Pattern {
    Pattern::Copy(x.into())
}

fn sink(x: impl Into<Count>) -> Pattern {
    Pattern::Sink(x.into())
}

fn eq(x: impl Into<Count>) -> Pattern {
    Pattern::EqTest(x.into())
}

fn src(x: impl Into<Count>) -> Pattern {
    Pattern::Source(x.into())
}

fn meta(name: &'static str) -> Pattern {
    Pattern::Meta(name)
}

fn par(a: Pattern, b: Pattern) -> Pattern {
    Pattern::Par(Box::new(a), Box::new(b))
}

fn par3(a: Pattern, b: Pattern, c: Pattern) -> Pattern {
    par(par(a, b), c)
}

fn seq(a: Pattern, b: Pattern) -> Pattern {
    Pattern::Seq(Box::new(a), Box::new(b))
}

fn seq3(a: Pattern, b: Pattern, c: Pattern) -> Pattern {
    seq(seq(a, b), c)
}

fn feed(a: Pattern, w: impl Into<Count>) -> Pattern {
    Pattern::Feed(Box::new(a), w.into())
}

fn mv(name: &'static str, inputs: Count, outputs: Count) -> MetaVar {
    MetaVar {
        name,
        inputs,
        outputs,
    }
}

struct Entry {
    name: &'static str,
    table: u8,
    params: &'static [char],
    metas: Vec<MetaVar>,
    sides: Vec<Pattern>,
}

fn entry(
    name: &'static str,
    table: u8,
    params: &'static [char],
    metas: Vec<MetaVar>,
    sides: Vec<Pattern>,
) -> Entry {
    Entry {
        name,
        table,
        params,
        metas,
        sides,
    }
}

fn pin_m1() -> Pin {
    Pin {
        params: vec![('m', 1)],
        bindings: Vec::new(),
    }
}

/// The axioms of the basic algebra (table 1), the synchronous branching
/// axioms (table 3) and the two flowchart axioms they replace (table 2).
pub fn axiom_catalog() -> Vec<Axiom> {
    let (f, g, h) = (meta("f"), meta("g"), meta("h"));
    let entries = vec![
        entry(
            "B1",
            1,
            &['k', 'l', 'm', 'n', 'p', 'q'],
            vec![
                mv("f", c('k'), c('l')),
                mv("g", c('m'), c('n')),
                mv("h", c('p'), c('q')),
            ],
            vec![
                par(f.clone(), par(g.clone(), h.clone())),
                par(par(f.clone(), g.clone()), h.clone()),
            ],
        ),
        entry(
            "B2",
            1,
            &['k', 'l'],
            vec![mv("f", c('k'), c('l'))],
            vec![par(id(0), f.clone()), f.clone(), par(f.clone(), id(0))],
        ),
        entry(
            "B3",
            1,
            &['k', 'l', 'm', 'n'],
            vec![
                mv("f", c('k'), c('l')),
                mv("g", c('l'), c('m')),
                mv("h", c('m'), c('n')),
            ],
            vec![
                seq(f.clone(), seq(g.clone(), h.clone())),
                seq(seq(f.clone(), g.clone()), h.clone()),
            ],
        ),
        entry(
            "B4",
            1,
            &['k', 'l'],
            vec![mv("f", c('k'), c('l'))],
            vec![seq(id('k'), f.clone()), f.clone(), seq(f.clone(), id('l'))],
        ),
        entry(
            "B5",
            1,
            &['k', 'l', 'm', 'n', 'p', 'q'],
            vec![
                mv("f", c('k'), c('l')),
                mv("g", c('l'), c('m')),
                mv("f'", c('n'), c('p')),
                mv("g'", c('p'), c('q')),
            ],
            vec![
                seq(par(f.clone(), meta("f'")), par(g.clone(), meta("g'"))),
                par(seq(f.clone(), g.clone()), seq(meta("f'"), meta("g'"))),
            ],
        ),
        entry(
            "B6",
            1,
            &['k', 'l'],
            vec![],
            vec![par(id('k'), id('l')), id(sum('k', 'l'))],
        ),
        entry(
            "B7",
            1,
            &['k', 'l'],
            vec![],
            vec![seq(tr('k', 'l'), tr('l', 'k')), id(sum('k', 'l'))],
        ),
        entry("B8", 1, &['k'], vec![], vec![tr('k', 0), id('k')]),
        entry(
            "B9",
            1,
            &['k', 'l', 'm'],
            vec![],
            vec![
                tr('k', sum('l', 'm')),
                seq(par(tr('k', 'l'), id('m')), par(id('l'), tr('k', 'm'))),
            ],
        ),
        entry(
            "B10",
            1,
            &['k', 'l', 'm', 'n'],
            vec![mv("f", c('k'), c('m')), mv("g", c('l'), c('n'))],
            vec![
                seq(par(f.clone(), g.clone()), tr('m', 'n')),
                seq(tr('k', 'l'), par(g.clone(), f.clone())),
            ],
        ),
        entry(
            "R1",
            1,
            &['k', 'l', 'm', 'n'],
            vec![
                mv("f", sum('l', 'm'), sum('n', 'm')),
                mv("g", c('k'), c('l')),
            ],
            vec![
                seq(g.clone(), feed(f.clone(), 'm')),
                feed(seq(par(g.clone(), id('m')), f.clone()), 'm'),
            ],
        ),
        entry(
            "R2",
            1,
            &['k', 'l', 'm', 'n'],
            vec![
                mv("f", sum('k', 'm'), sum('l', 'm')),
                mv("g", c('l'), c('n')),
            ],
            vec![
                seq(feed(f.clone(), 'm'), g.clone()),
                feed(seq(f.clone(), par(g.clone(), id('m'))), 'm'),
            ],
        ),
        entry(
            "R3",
            1,
            &['k', 'l', 'm', 'n', 'p'],
            vec![
                mv("f", c('k'), c('l')),
                mv("g", sum('n', 'm'), sum('p', 'm')),
            ],
            vec![
                par(f.clone(), feed(g.clone(), 'm')),
                feed(par(f.clone(), g.clone()), 'm'),
            ],
        ),
        entry(
            "R4",
            1,
            &['k', 'l', 'm', 'n'],
            vec![
                mv("f", sum('k', 'm'), sum('l', 'n')),
                mv("g", c('n'), c('m')),
            ],
            vec![
                feed(seq(f.clone(), par(id('l'), g.clone())), 'm'),
                feed(seq(par(id('k'), g.clone()), f.clone()), 'n'),
            ],
        ),
        entry(
            "R5",
            1,
            &['k', 'l'],
            vec![mv("f", c('k'), c('l'))],
            vec![feed(f.clone(), 0), f.clone()],
        ),
        entry(
            "R6",
            1,
            &['k', 'l', 'm', 'n'],
            vec![mv(
                "f",
                Count::Sum(vec![c('m'), c('k'), c('l')]),
                Count::Sum(vec![c('n'), c('k'), c('l')]),
            )],
            vec![
                feed(feed(f.clone(), 'l'), 'k'),
                feed(f.clone(), sum('k', 'l')),
            ],
        ),
        entry("F1", 1, &['k'], vec![], vec![feed(id('k'), 'k'), id(0)]),
        entry(
            "F2",
            1,
            &['k'],
            vec![],
            vec![feed(tr('k', 'k'), 'k'), id('k')],
        ),
        // synchronous branching
        entry(
            "A1",
            3,
            &['m'],
            vec![],
            vec![
                seq(par(eq('m'), id('m')), eq('m')),
                seq(par(id('m'), eq('m')), eq('m')),
            ],
        ),
        entry(
            "A2",
            3,
            &['m'],
            vec![],
            vec![seq(tr('m', 'm'), eq('m')), eq('m')],
        ),
        entry(
            "A3°",
            3,
            &['m'],
            vec![],
            vec![
                seq(par(src('m'), id('m')), eq('m')),
                seq(sink('m'), src('m')),
            ],
        ),
        entry(
            "A4",
            3,
            &['m'],
            vec![],
            vec![seq(eq('m'), sink('m')), par(sink('m'), sink('m'))],
        ),
        entry(
            "A5",
            3,
            &['m'],
            vec![],
            vec![
                seq(cp('m'), par(cp('m'), id('m'))),
                seq(cp('m'), par(id('m'), cp('m'))),
            ],
        ),
        entry(
            "A6",
            3,
            &['m'],
            vec![],
            vec![seq(cp('m'), tr('m', 'm')), cp('m')],
        ),
        entry(
            "A7",
            3,
            &['m'],
            vec![],
            vec![seq(cp('m'), par(sink('m'), id('m'))), id('m')],
        ),
        entry(
            "A8",
            3,
            &['m'],
            vec![],
            vec![seq(src('m'), cp('m')), par(src('m'), src('m'))],
        ),
        entry(
            "A9",
            3,
            &['m'],
            vec![],
            vec![seq(src('m'), sink('m')), id(0)],
        ),
        entry(
            "A10",
            3,
            &['m'],
            vec![],
            vec![
                seq(eq('m'), cp('m')),
                seq3(
                    par(cp('m'), cp('m')),
                    par3(id('m'), tr('m', 'm'), id('m')),
                    par(eq('m'), eq('m')),
                ),
            ],
        ),
        entry(
            "A11",
            3,
            &['m'],
            vec![],
            vec![seq(cp('m'), eq('m')), id('m')],
        ),
        entry("A12", 3, &[], vec![], vec![src(0), id(0)]),
        entry(
            "A13",
            3,
            &['m', 'n'],
            vec![],
            vec![src(sum('m', 'n')), par(src('m'), src('n'))],
        ),
        entry("A14", 3, &[], vec![], vec![eq(0), id(0)]),
        entry(
            "A15",
            3,
            &['m', 'n'],
            vec![],
            vec![
                eq(sum('m', 'n')),
                seq(par3(id('m'), tr('n', 'm'), id('n')), par(eq('m'), eq('n'))),
            ],
        ),
        entry("A16", 3, &[], vec![], vec![sink(0), id(0)]),
        entry(
            "A17",
            3,
            &['m', 'n'],
            vec![],
            vec![sink(sum('m', 'n')), par(sink('m'), sink('n'))],
        ),
        entry("A18", 3, &[], vec![], vec![cp(0), id(0)]),
        entry(
            "A19",
            3,
            &['m', 'n'],
            vec![],
            vec![
                cp(sum('m', 'n')),
                seq(par(cp('m'), cp('n')), par3(id('m'), tr('m', 'n'), id('n'))),
            ],
        ),
        entry("F3", 3, &['m'], vec![], vec![feed(eq('m'), 'm'), sink('m')]),
        entry("F4", 3, &['m'], vec![], vec![feed(cp('m'), 'm'), src('m')]),
        entry(
            "F5°",
            3,
            &['m'],
            vec![],
            vec![f5_loop(), seq(sink('m'), src('m'))],
        ),
        // flowchart originals, invalid for synchronous networks
        entry(
            "A3",
            2,
            &['m'],
            vec![],
            vec![seq(par(src('m'), id('m')), eq('m')), id('m')],
        ),
        entry("F5", 2, &['m'], vec![], vec![f5_loop(), id('m')]),
    ];

    entries
        .into_iter()
        .map(|e| {
            let pins = match e.name {
                "R1" | "R2" | "R3" => vec![pin_m1()],
                "R4" => vec![
                    pin_m1(),
                    Pin {
                        params: vec![('k', 1), ('l', 1), ('m', 2), ('n', 2)],
                        bindings: vec![("g", Term::Transp(1, 1))],
                    },
                ],
                _ => Vec::new(),
            };
            Axiom {
                name: e.name,
                table: e.table,
                expected: if e.table == 2 {
                    Expectation::FailsSynchronously
                } else {
                    Expectation::Holds
                },
                params: e.params.to_vec(),
                metas: e.metas,
                sides: e.sides,
                pins,
            }
        })
        .collect()
}

fn f5_loop() -> Pattern {
    feed(
        seq3(
            par(id('m'), cp('m')),
            par(tr('m', 'm'), id('m')),
            par(id('m'), eq('m')),
        ),
        'm',
    )
}
