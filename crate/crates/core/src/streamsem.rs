//! Synchronous stream-transformer model, deterministic fragment.
//!
//! A term is compiled into a netlist of nets (wire classes after identifying
//! everything joined by identities, transpositions, sequential composition and
//! feedback), instantaneous branching nodes (`cp`, `eq`) and cells. Each tick:
//!
//! 1. every cell offers its current output tuple if the tick is one of its
//!    start ticks, ticks otherwise;
//! 2. nets are evaluated in dependency order; a net on an instantaneous cycle
//!    (necessarily cell-free) or without a driver carries a tick;
//! 3. cells absorb the data on their input nets. A cell that has received one
//!    datum on every input port restarts on the next tick with the tabulated
//!    output tuple; a second datum on a filled port is a slot collision.
//!
//! Direct connections are computed compositionally on the term.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::rng::rng_for;
use crate::stream::random_streams;
use crate::{CellDef, CellEnv, Collision, Datum, Error, Result, Sort, Stream, Term, Trace};

type Net = usize;

#[derive(Debug, Clone, Copy)]
enum Driver {
    Input(usize),
    Copy(Net),
    Eq(Net, Net),
    Cell(usize, usize),
}

#[derive(Debug, Clone, Copy)]
enum Eval {
    Tick,
    Input(usize),
    Copy(Net),
    Eq(Net, Net),
    Cell(usize, usize),
}

#[derive(Debug, Clone)]
struct CellState {
    name: String,
    def: CellDef,
    inputs: Vec<Net>,
    slots: Vec<Option<Datum>>,
    current: Vec<Datum>,
    emit: bool,
}

/// A compiled network ready to be stepped tick by tick.
#[derive(Debug, Clone)]
pub struct Machine {
    sort: Sort,
    dc: BTreeSet<(usize, usize)>,
    plan: Vec<(Net, Eval)>,
    net_count: usize,
    outputs: Vec<Net>,
    cells: Vec<CellState>,
    domain_size: usize,
    tick: usize,
}

struct Builder<'a> {
    env: &'a CellEnv,
    parent: Vec<Net>,
    drivers: Vec<(Net, Driver)>,
    cells: Vec<(String, CellDef, Vec<Net>, Vec<Net>)>,
}

impl Builder<'_> {
    fn fresh(&mut self, n: usize) -> Vec<Net> {
        let start = self.parent.len();
        self.parent.extend(start..start + n);
        (start..start + n).collect()
    }

    fn find(&mut self, mut x: Net) -> Net {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: Net, b: Net) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb] = ra;
        }
    }

    /// Returns the input and output nets of `t`.
    fn build(&mut self, t: &Term) -> Result<(Vec<Net>, Vec<Net>)> {
        Ok(match t {
            Term::Par(a, b) => {
                let (mut ia, mut oa) = self.build(a)?;
                let (ib, ob) = self.build(b)?;
                ia.extend(ib);
                oa.extend(ob);
                (ia, oa)
            }
            Term::Seq(a, b) => {
                let (ia, oa) = self.build(a)?;
                let (ib, ob) = self.build(b)?;
                for (x, y) in oa.into_iter().zip(ib) {
                    self.union(x, y);
                }
                (ia, ob)
            }
            Term::Feed(body, p) => {
                let (mut ins, mut outs) = self.build(body)?;
                let back_in = ins.split_off(ins.len() - p);
                let back_out = outs.split_off(outs.len() - p);
                for (x, y) in back_out.into_iter().zip(back_in) {
                    self.union(x, y);
                }
                (ins, outs)
            }
            Term::Id(n) => {
                let nets = self.fresh(*n);
                (nets.clone(), nets)
            }
            Term::Transp(m, n) => {
                let nets = self.fresh(m + n);
                let outs = nets[*m..].iter().chain(&nets[..*m]).copied().collect();
                (nets, outs)
            }
            Term::Copy(m) => {
                let ins = self.fresh(*m);
                let outs = self.fresh(2 * m);
                for i in 0..*m {
                    self.drivers.push((outs[i], Driver::Copy(ins[i])));
                    self.drivers.push((outs[m + i], Driver::Copy(ins[i])));
                }
                (ins, outs)
            }
            Term::Sink(m) => (self.fresh(*m), Vec::new()),
            Term::EqTest(m) => {
                let ins = self.fresh(2 * m);
                let outs = self.fresh(*m);
                for i in 0..*m {
                    self.drivers.push((outs[i], Driver::Eq(ins[i], ins[m + i])));
                }
                (ins, outs)
            }
            // undriven nets carry ticks
            Term::DummySource(m) => (Vec::new(), self.fresh(*m)),
            Term::Cell(name) => {
                let def = self
                    .env
                    .cell(name)
                    .ok_or_else(|| Error::UnboundCell(name.clone()))?;
                let ins = self.fresh(def.sort.inputs);
                let outs = self.fresh(def.sort.outputs);
                let index = self.cells.len();
                for (port, &o) in outs.iter().enumerate() {
                    self.drivers.push((o, Driver::Cell(index, port)));
                }
                self.cells
                    .push((name.clone(), def.clone(), ins.clone(), outs.clone()));
                (ins, outs)
            }
        })
    }
}

/// Direct-connection sources: for every output port, the input port whose
/// stream it always equals, if any.
pub fn direct_sources(t: &Term, env: &CellEnv) -> Result<Vec<Option<usize>>> {
    t.sort_of(env)?;
    Ok(sources(t, env))
}

fn sources(t: &Term, env: &CellEnv) -> Vec<Option<usize>> {
    match t {
        Term::Par(a, b) => {
            let shift = a.sort_of(env).expect("checked").inputs;
            let mut out = sources(a, env);
            out.extend(sources(b, env).into_iter().map(|s| s.map(|i| i + shift)));
            out
        }
        Term::Seq(a, b) => {
            let left = sources(a, env);
            sources(b, env)
                .into_iter()
                .map(|s| s.and_then(|l| left[l]))
                .collect()
        }
        Term::Feed(body, p) => {
            let sort = body.sort_of(env).expect("checked");
            let (m, n) = (sort.inputs - p, sort.outputs - p);
            let src = sources(body, env);
            (0..n)
                .map(|j| {
                    let mut cur = src[j];
                    // a chain through more than p loops is an instantaneous cycle
                    for _ in 0..=*p {
                        match cur {
                            Some(s) if s >= m => cur = src[n + (s - m)],
                            done => return done,
                        }
                    }
                    None
                })
                .collect()
        }
        Term::Id(n) => (0..*n).map(Some).collect(),
        Term::Transp(m, n) => (0..*n)
            .map(|j| Some(m + j))
            .chain((0..*m).map(Some))
            .collect(),
        Term::Copy(m) => (0..*m).chain(0..*m).map(Some).collect(),
        Term::Sink(_) => Vec::new(),
        Term::EqTest(m) | Term::DummySource(m) => vec![None; *m],
        Term::Cell(name) => vec![None; env.cell(name).expect("checked").sort.outputs],
    }
}

/// Compiles `t` over the deterministic cells of `env`.
pub fn compile(t: &Term, env: &CellEnv) -> Result<Machine> {
    let sort = t.sort_of(env)?;
    let dc = direct_sources(t, env)?
        .into_iter()
        .enumerate()
        .filter_map(|(j, s)| s.map(|i| (i + 1, j + 1)))
        .collect();

    let mut b = Builder {
        env,
        parent: Vec::new(),
        drivers: Vec::new(),
        cells: Vec::new(),
    };
    let (ins, outs) = b.build(t)?;

    // dense numbering of net classes
    let total = b.parent.len();
    let mut dense = vec![usize::MAX; total];
    let mut net_count = 0;
    for x in 0..total {
        let r = b.find(x);
        if dense[r] == usize::MAX {
            dense[r] = net_count;
            net_count += 1;
        }
        dense[x] = dense[r];
    }
    let mut driver: Vec<Option<Driver>> = vec![None; net_count];
    let mut set_driver = |net: Net, d: Driver| {
        debug_assert!(driver[net].is_none(), "net driven twice");
        driver[net] = Some(d);
    };
    for (i, &x) in ins.iter().enumerate() {
        set_driver(dense[x], Driver::Input(i));
    }
    for &(x, d) in &b.drivers {
        let d = match d {
            Driver::Copy(src) => Driver::Copy(dense[src]),
            Driver::Eq(p, q) => Driver::Eq(dense[p], dense[q]),
            other => other,
        };
        set_driver(dense[x], d);
    }

    let plan = schedule(&driver);
    let cells = b
        .cells
        .into_iter()
        .map(|(name, def, cins, _)| CellState {
            name,
            slots: vec![None; def.sort.inputs],
            current: def.init.clone(),
            inputs: cins.iter().map(|&x| dense[x]).collect(),
            def,
            emit: true,
        })
        .collect();
    Ok(Machine {
        sort,
        dc,
        plan,
        net_count,
        outputs: outs.iter().map(|&x| dense[x]).collect(),
        cells,
        domain_size: env.domain_size(),
        tick: 0,
    })
}

fn dependencies(d: Option<Driver>) -> impl Iterator<Item = Net> {
    let (a, b) = match d {
        Some(Driver::Copy(x)) => (Some(x), None),
        Some(Driver::Eq(x, y)) => (Some(x), Some(y)),
        _ => (None, None),
    };
    a.into_iter().chain(b)
}

/// Orders nets so that every net follows its instantaneous dependencies;
/// nets in a strongly connected component with a cycle evaluate to tick.
fn schedule(driver: &[Option<Driver>]) -> Vec<(Net, Eval)> {
    struct Tarjan<'a> {
        driver: &'a [Option<Driver>],
        index: Vec<usize>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<Net>,
        counter: usize,
        plan: Vec<(Net, Eval)>,
    }

    impl Tarjan<'_> {
        fn visit(&mut self, v: Net) {
            self.index[v] = self.counter;
            self.low[v] = self.counter;
            self.counter += 1;
            self.stack.push(v);
            self.on_stack[v] = true;
            for w in dependencies(self.driver[v]) {
                if self.index[w] == usize::MAX {
                    self.visit(w);
                    self.low[v] = self.low[v].min(self.low[w]);
                } else if self.on_stack[w] {
                    self.low[v] = self.low[v].min(self.index[w]);
                }
            }
            if self.low[v] == self.index[v] {
                let mut component = Vec::new();
                loop {
                    let w = self.stack.pop().expect("nonempty");
                    self.on_stack[w] = false;
                    component.push(w);
                    if w == v {
                        break;
                    }
                }
                let cyclic = component.len() > 1 || dependencies(self.driver[v]).any(|w| w == v);
                // components pop in reverse topological order of the
                // dependency edges, i.e. dependencies first
                for w in component {
                    let e = if cyclic {
                        Eval::Tick
                    } else {
                        match self.driver[w] {
                            None => Eval::Tick,
                            Some(Driver::Input(i)) => Eval::Input(i),
                            Some(Driver::Copy(x)) => Eval::Copy(x),
                            Some(Driver::Eq(x, y)) => Eval::Eq(x, y),
                            Some(Driver::Cell(c, p)) => Eval::Cell(c, p),
                        }
                    };
                    self.plan.push((w, e));
                }
            }
        }
    }

    let n = driver.len();
    let mut t = Tarjan {
        driver,
        index: vec![usize::MAX; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        counter: 0,
        plan: Vec::with_capacity(n),
    };
    for v in 0..n {
        if t.index[v] == usize::MAX {
            t.visit(v);
        }
    }
    t.plan
}

impl Machine {
    pub fn sort(&self) -> Sort {
        self.sort
    }

    /// Directly connected `(input, output)` port pairs, numbered from 1.
    pub fn dc(&self) -> &BTreeSet<(usize, usize)> {
        &self.dc
    }

    /// Names of the cells in occurrence order.
    pub fn cell_names(&self) -> impl Iterator<Item = &str> {
        self.cells.iter().map(|c| c.name.as_str())
    }

    /// Advances one tick. On a slot collision the outputs of the tick are
    /// still returned together with the collision.
    pub fn step(&mut self, inputs: &[Option<Datum>]) -> (Vec<Option<Datum>>, Option<Collision>) {
        assert_eq!(inputs.len(), self.sort.inputs, "input arity");
        let mut values: Vec<Option<Datum>> = vec![None; self.net_count];
        for &(net, e) in &self.plan {
            values[net] = match e {
                Eval::Tick => None,
                Eval::Input(i) => inputs[i],
                Eval::Copy(x) => values[x],
                Eval::Eq(x, y) => {
                    if values[x] == values[y] {
                        values[x]
                    } else {
                        None
                    }
                }
                Eval::Cell(c, p) => {
                    let cell = &self.cells[c];
                    cell.emit.then(|| cell.current[p])
                }
            };
        }
        let outputs = self.outputs.iter().map(|&n| values[n]).collect();

        let mut collision = None;
        for (index, cell) in self.cells.iter_mut().enumerate() {
            for (port, &net) in cell.inputs.iter().enumerate() {
                if let Some(d) = values[net] {
                    if cell.slots[port].is_some() {
                        collision.get_or_insert(Collision {
                            tick: self.tick,
                            cell: index,
                            port,
                        });
                    } else {
                        cell.slots[port] = Some(d);
                    }
                }
            }
        }
        for cell in &mut self.cells {
            cell.emit = cell.slots.iter().all(Option::is_some);
            if cell.emit {
                let consumed: Vec<Datum> = cell
                    .slots
                    .iter_mut()
                    .map(|s| s.take().expect("filled"))
                    .collect();
                cell.current = cell.def.apply(&consumed, self.domain_size).to_vec();
            }
        }
        self.tick += 1;
        (outputs, collision)
    }

    /// Runs from the current state for `horizon` ticks.
    pub fn run(&mut self, inputs: &[Stream], horizon: usize) -> Result<Trace> {
        if inputs.len() != self.sort.inputs {
            return Err(Error::InputArity {
                expected: self.sort.inputs,
                found: inputs.len(),
            });
        }
        let mut outputs = vec![Stream::default(); self.sort.outputs];
        let mut frame = vec![None; inputs.len()];
        for k in 0..horizon {
            for (slot, s) in frame.iter_mut().zip(inputs) {
                *slot = s.at(k);
            }
            let (out, collision) = self.step(&frame);
            for (stream, v) in outputs.iter_mut().zip(out) {
                stream.push(v);
            }
            if collision.is_some() {
                return Ok(Trace { outputs, collision });
            }
        }
        Ok(Trace {
            outputs,
            collision: None,
        })
    }
}

/// Evaluates `t` on `inputs` for `horizon` ticks, keeping collisions in the
/// trace.
pub fn trace(t: &Term, env: &CellEnv, inputs: &[Stream], horizon: usize) -> Result<Trace> {
    compile(t, env)?.run(inputs, horizon)
}

/// Output prefixes of length `horizon`; a slot collision is an error.
pub fn eval_prefix(
    t: &Term,
    env: &CellEnv,
    inputs: &[Stream],
    horizon: usize,
) -> Result<Vec<Stream>> {
    trace(t, env, inputs, horizon)?.into_result()
}

/// Evidence that a network is not determined by the past.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImproperWitness {
    pub first: Vec<Stream>,
    pub second: Vec<Stream>,
    /// The inputs agree on ticks `0..agree_until`.
    pub agree_until: usize,
    /// Tick at which the outputs differ.
    pub tick: usize,
}

/// Randomized falsification of properness: inputs agreeing up to tick `k`
/// must give outputs agreeing up to tick `k+1`, and the tick-0 output must not
/// depend on the input at all. Ticks after a slot collision are not compared.
pub fn check_proper(
    t: &Term,
    env: &CellEnv,
    trials: usize,
    horizon: usize,
    seed: u64,
) -> Result<Option<ImproperWitness>> {
    let machine = compile(t, env)?;
    let m = machine.sort.inputs;
    let horizon = horizon.max(2);
    let mut rng = rng_for(seed, 0x5052_4f50);
    let run = |inputs: &[Stream]| machine.clone().run(inputs, horizon);
    let domain = env.domain_size();

    let reference = random_streams(&mut rng, m, horizon, domain, 0.8);
    let reference_out = run(&reference)?;
    for _ in 0..trials {
        let x = random_streams(&mut rng, m, horizon, domain, 0.8);
        let k = rng.gen_range(0..horizon - 1);
        let tail = random_streams(&mut rng, m, horizon, domain, 0.8);
        let x2: Vec<Stream> = x
            .iter()
            .zip(&tail)
            .map(|(a, b)| {
                Stream::new(
                    (0..horizon)
                        .map(|i| if i <= k { a.at(i) } else { b.at(i) })
                        .collect(),
                )
            })
            .collect();
        let (y, y2) = (run(&x)?, run(&x2)?);
        if let Some(tick) = first_difference(&y, &y2, k + 1) {
            return Ok(Some(ImproperWitness {
                first: x,
                second: x2,
                agree_until: k + 1,
                tick,
            }));
        }
        if let Some(tick) = first_difference(&reference_out, &y, 0) {
            return Ok(Some(ImproperWitness {
                first: reference.clone(),
                second: x,
                agree_until: 0,
                tick,
            }));
        }
    }
    Ok(None)
}

pub fn is_proper(
    t: &Term,
    env: &CellEnv,
    trials: usize,
    horizon: usize,
    seed: u64,
) -> Result<bool> {
    Ok(check_proper(t, env, trials, horizon, seed)?.is_none())
}

/// First tick `<= last` at which both traces have output and differ.
fn first_difference(a: &Trace, b: &Trace, last: usize) -> Option<usize> {
    let observed = |t: &Trace| t.outputs.first().map_or(usize::MAX, |s| s.prefix().len());
    let limit = observed(a).min(observed(b)).min(last + 1);
    (0..limit).find(|&k| {
        a.outputs
            .iter()
            .zip(&b.outputs)
            .any(|(x, y)| x.at(k) != y.at(k))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expand_blocks;

    fn d(x: u16) -> Option<Datum> {
        Some(Datum(x))
    }

    fn stream(xs: &[Option<Datum>]) -> Stream {
        Stream::new(xs.to_vec())
    }

    fn counter() -> Term {
        Term::feed(Term::seq(Term::cell("succ4"), Term::Copy(1)), 1)
    }

    #[test]
    fn identity_flow() {
        let env = CellEnv::numeric(4).unwrap();
        let input = stream(&[d(0), d(1), None, d(3)]);
        let out = eval_prefix(&Term::Id(1), &env, core::slice::from_ref(&input), 4).unwrap();
        assert_eq!(out, vec![input]);
    }

    #[test]
    fn equality_test_pointwise() {
        // oracle: emit x(k) where x(k) = y(k), tick elsewhere
        let env = CellEnv::numeric(3).unwrap();
        let x = [d(0), d(1), d(0)];
        let y = [d(0), d(2), None];
        let expected: Vec<_> = x
            .iter()
            .zip(&y)
            .map(|(a, b)| if a == b { *a } else { None })
            .collect();
        let out = eval_prefix(&Term::EqTest(1), &env, &[stream(&x), stream(&y)], 3).unwrap();
        assert_eq!(out[0].window(3), expected);
        assert_eq!(expected, vec![d(0), None, None]);
    }

    #[test]
    fn copy_feedback_is_dummy_source() {
        let env = CellEnv::numeric(2).unwrap();
        let out = eval_prefix(&Term::feed(Term::Copy(1), 1), &env, &[], 5).unwrap();
        assert_eq!(out, vec![Stream::ticks()]);
    }

    #[test]
    fn modular_counter() {
        let env = CellEnv::succ_mod(4);
        let out = eval_prefix(&counter(), &env, &[], 8).unwrap();
        assert_eq!(out[0].window(8), [0, 1, 2, 3, 0, 1, 2, 3].map(d).to_vec());
    }

    #[test]
    fn cell_waits_for_input() {
        let env = CellEnv::succ_mod(4);
        let out = eval_prefix(&Term::cell("succ4"), &env, &[stream(&[d(0)])], 3).unwrap();
        assert_eq!(out[0].window(3), vec![d(0), d(1), None]);
    }

    #[test]
    fn two_port_cell_accumulates_across_ticks() {
        let mut env = CellEnv::numeric(3).unwrap();
        let add = CellDef::from_fn(Sort::new(2, 1), 3, vec![Datum(2)], |x| {
            vec![Datum((x[0].0 + x[1].0) % 3)]
        })
        .unwrap();
        env.insert("add".into(), add).unwrap();
        let x = stream(&[d(1), None, None, d(1)]);
        let y = stream(&[None, None, d(1), d(2)]);
        let out = eval_prefix(&Term::cell("add"), &env, &[x.clone(), y], 5).unwrap();
        // completes at tick 2, restarts at 3 with 1+1; completes again at 3
        assert_eq!(out[0].window(5), vec![d(2), None, None, d(2), d(0)]);

        let y2 = stream(&[None, d(1)]);
        let x2 = stream(&[d(0), d(0)]);
        let err = eval_prefix(&Term::cell("add"), &env, &[x2, y2], 4).unwrap_err();
        assert_eq!(
            err,
            Error::SlotCollision {
                tick: 1,
                cell: 0,
                port: 0
            }
        );
        let _ = x;
    }

    #[test]
    fn direct_connections() {
        let env = CellEnv::succ_mod(4);
        let dc = |t: &Term| {
            compile(t, &env)
                .unwrap()
                .dc()
                .iter()
                .copied()
                .collect::<Vec<_>>()
        };
        assert_eq!(dc(&Term::Copy(1)), vec![(1, 1), (1, 2)]);
        assert!(dc(&Term::EqTest(1)).is_empty());
        assert!(dc(&Term::cell("succ4")).is_empty());
        assert_eq!(dc(&Term::Transp(1, 2)), vec![(1, 3), (2, 1), (3, 2)]);
        assert!(dc(&Term::feed(Term::Copy(1), 1)).is_empty());
        assert_eq!(dc(&Term::feed(Term::Transp(1, 1), 1)), vec![(1, 1)]);
    }

    #[test]
    fn equality_witness_refutes_direct_connection() {
        let env = CellEnv::numeric(2).unwrap();
        let out = eval_prefix(
            &Term::EqTest(1),
            &env,
            &[stream(&[d(0)]), stream(&[d(1)])],
            1,
        )
        .unwrap();
        assert_ne!(out[0].at(0), d(0));
        assert_ne!(out[0].at(0), d(1));
    }

    #[test]
    fn properness() {
        let env = CellEnv::succ_mod(4);
        assert!(is_proper(&Term::cell("succ4"), &env, 64, 12, 1).unwrap());
        assert!(is_proper(
            &Term::seq(Term::cell("succ4"), Term::Id(1)),
            &env,
            64,
            12,
            2
        )
        .unwrap());
        let witness = check_proper(&Term::Id(1), &env, 64, 12, 3)
            .unwrap()
            .expect("identity is not proper");
        assert!(witness.tick <= witness.agree_until);
    }

    #[test]
    fn unresolved_equality_loop_is_tick() {
        // ((I ++ cp) ; (X ++ I) ; (I ++ eq)) ^ 1 ignores its input
        let env = CellEnv::numeric(2).unwrap();
        let body = Term::seq_all([
            Term::par(Term::Id(1), Term::Copy(1)),
            Term::par(Term::Transp(1, 1), Term::Id(1)),
            Term::par(Term::Id(1), Term::EqTest(1)),
        ])
        .unwrap();
        let t = Term::feed(body, 1);
        let out = eval_prefix(&t, &env, &[stream(&[d(1), d(0), d(1)])], 3).unwrap();
        assert_eq!(out, vec![Stream::ticks()]);
    }

    #[test]
    fn blocks_and_expansion_agree() {
        let env = CellEnv::numeric(3).unwrap();
        let x = [
            stream(&[d(0), d(1), None, d(2)]),
            stream(&[d(2), d(1), d(1), None]),
            stream(&[None, d(1), d(0), d(2)]),
            stream(&[d(2), d(2), d(1), d(2)]),
        ];
        for t in [
            Term::EqTest(2),
            Term::Transp(1, 3),
            Term::seq(Term::Copy(2), Term::Transp(2, 2)),
        ] {
            let arity = t.sort_of(&env).unwrap().inputs;
            let a = eval_prefix(&t, &env, &x[..arity], 4).unwrap();
            let b = eval_prefix(&expand_blocks(&t), &env, &x[..arity], 4).unwrap();
            assert_eq!(a, b, "{t}");
        }
    }
}
