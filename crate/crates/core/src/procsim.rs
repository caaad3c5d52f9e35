//! Discrete-time process network simulator.
//!
//! After block expansion every unit wire and every feedback loop edge becomes
//! a minimal stream delayer process, every constant and cell its own process.
//! Processes are joined by point-to-point channels. A run proceeds slice by
//! slice: the environment offers the input data of the slice, cells that
//! (re)start in the slice offer their output tuple, and pending messages are
//! delivered one at a time, in an order chosen by a [`Scheduler`], until the
//! slice is quiescent. An equality test that saw only one of its operands
//! drops it at the end of the slice.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng as _;

use crate::rng::{rng_for, Rng};
use crate::stream::random_streams;
use crate::{
    expand_blocks, CellDef, CellEnv, Collision, Datum, Error, Result, Sort, Stream, Term, Trace,
};

pub type ChannelId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    /// External port of the whole network.
    Env(usize),
    /// Port of a process.
    Node(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Channel {
    pub from: Endpoint,
    pub to: Endpoint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind {
    /// Minimal stream delayer: forwards one datum per slice within the slice.
    Msd,
    Copy,
    Sink,
    Eq,
    Source,
    Cell {
        name: String,
        occurrence: usize,
    },
}

impl NodeKind {
    fn arity(&self, env: &CellEnv) -> Sort {
        match self {
            NodeKind::Msd => Sort::new(1, 1),
            NodeKind::Copy => Sort::new(1, 2),
            NodeKind::Sink => Sort::new(1, 0),
            NodeKind::Eq => Sort::new(2, 1),
            NodeKind::Source => Sort::new(0, 1),
            NodeKind::Cell { name, .. } => env.cell(name).expect("bound").sort,
        }
    }
}

#[derive(Debug, Clone)]
enum State {
    Msd {
        seen: bool,
    },
    Copy,
    Sink,
    Eq {
        waiting: Option<(usize, Datum)>,
    },
    Source,
    Cell {
        def: CellDef,
        slots: Vec<Option<Datum>>,
        current: Vec<Datum>,
        emit: bool,
    },
}

#[derive(Debug, Clone)]
pub struct Node {
    pub kind: NodeKind,
    /// Outgoing channel per output port.
    pub out: Vec<ChannelId>,
    state: State,
}

/// The process instance of a network.
#[derive(Debug, Clone)]
pub struct ProcessNet {
    pub sort: Sort,
    pub nodes: Vec<Node>,
    pub channels: Vec<Channel>,
    pub inputs: Vec<ChannelId>,
    pub outputs: Vec<ChannelId>,
    pub slice: usize,
    domain_size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    /// A datum is offered on a channel.
    Send,
    /// A process accepts a datum from a channel.
    Read,
    /// The environment observes a datum at an external output.
    Commit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Event {
    pub slice: usize,
    pub kind: EventKind,
    pub channel: ChannelId,
    pub datum: Datum,
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EventKind::Send => "send",
            EventKind::Read => "read",
            EventKind::Commit => "commit",
        })
    }
}

/// `slice<TAB>kind<TAB>channel<TAB>datum`, the datum as its domain index.
impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}",
            self.slice, self.kind, self.channel, self.datum.0
        )
    }
}

/// Order in which pending messages of a slice are delivered.
#[derive(Debug, Clone)]
pub enum Scheduler {
    Fifo,
    Lifo,
    Random(u64),
}

struct Pending {
    queue: VecDeque<(ChannelId, Datum)>,
    policy: Scheduler,
    rng: Option<Rng>,
}

impl Pending {
    fn new(policy: Scheduler) -> Self {
        let rng = match policy {
            Scheduler::Random(seed) => Some(rng_for(seed, 0x5343_4845)),
            _ => None,
        };
        Pending {
            queue: VecDeque::new(),
            policy,
            rng,
        }
    }

    fn next(&mut self) -> Option<(ChannelId, Datum)> {
        match self.policy {
            Scheduler::Fifo => self.queue.pop_front(),
            Scheduler::Lifo => self.queue.pop_back(),
            Scheduler::Random(_) => {
                if self.queue.is_empty() {
                    return None;
                }
                let i = self
                    .rng
                    .as_mut()
                    .expect("seeded")
                    .gen_range(0..self.queue.len());
                self.queue.swap_remove_back(i)
            }
        }
    }
}

/// Open fragment during instantiation: input and output process ports.
struct Fragment {
    inputs: Vec<(usize, usize)>,
    outputs: Vec<(usize, usize)>,
}

struct Instantiator<'a> {
    env: &'a CellEnv,
    nodes: Vec<Node>,
    channels: Vec<Channel>,
    cells: usize,
}

impl Instantiator<'_> {
    fn node(&mut self, kind: NodeKind) -> Result<Fragment> {
        let state = match &kind {
            NodeKind::Msd => State::Msd { seen: false },
            NodeKind::Copy => State::Copy,
            NodeKind::Sink => State::Sink,
            NodeKind::Eq => State::Eq { waiting: None },
            NodeKind::Source => State::Source,
            NodeKind::Cell { name, .. } => {
                let def = self
                    .env
                    .cell(name)
                    .ok_or_else(|| Error::UnboundCell(name.clone()))?
                    .clone();
                State::Cell {
                    slots: vec![None; def.sort.inputs],
                    current: def.init.clone(),
                    def,
                    emit: true,
                }
            }
        };
        let sort = kind.arity(self.env);
        let id = self.nodes.len();
        self.nodes.push(Node {
            kind,
            out: vec![usize::MAX; sort.outputs],
            state,
        });
        Ok(Fragment {
            inputs: (0..sort.inputs).map(|p| (id, p)).collect(),
            outputs: (0..sort.outputs).map(|p| (id, p)).collect(),
        })
    }

    fn connect(&mut self, from: Endpoint, to: Endpoint) -> ChannelId {
        let id = self.channels.len();
        self.channels.push(Channel { from, to });
        if let Endpoint::Node(n, p) = from {
            self.nodes[n].out[p] = id;
        }
        id
    }

    fn build(&mut self, t: &Term) -> Result<Fragment> {
        match t {
            Term::Par(a, b) => {
                let mut fa = self.build(a)?;
                let fb = self.build(b)?;
                fa.inputs.extend(fb.inputs);
                fa.outputs.extend(fb.outputs);
                Ok(fa)
            }
            Term::Seq(a, b) => {
                let fa = self.build(a)?;
                let fb = self.build(b)?;
                for (&(n, p), &(m, q)) in fa.outputs.iter().zip(&fb.inputs) {
                    self.connect(Endpoint::Node(n, p), Endpoint::Node(m, q));
                }
                Ok(Fragment {
                    inputs: fa.inputs,
                    outputs: fb.outputs,
                })
            }
            Term::Feed(body, 1) => {
                let mut f = self.build(body)?;
                let (bn, bp) = f.outputs.pop().expect("feedback port");
                let (cn, cp) = f.inputs.pop().expect("feedback port");
                let wire = self.node(NodeKind::Msd)?;
                let (wn, _) = wire.inputs[0];
                self.connect(Endpoint::Node(bn, bp), Endpoint::Node(wn, 0));
                self.connect(Endpoint::Node(wn, 0), Endpoint::Node(cn, cp));
                Ok(f)
            }
            Term::Id(0) => Ok(Fragment {
                inputs: Vec::new(),
                outputs: Vec::new(),
            }),
            Term::Id(1) => self.node(NodeKind::Msd),
            Term::Transp(1, 1) => {
                let a = self.node(NodeKind::Msd)?;
                let b = self.node(NodeKind::Msd)?;
                Ok(Fragment {
                    inputs: vec![a.inputs[0], b.inputs[0]],
                    outputs: vec![b.outputs[0], a.outputs[0]],
                })
            }
            Term::Copy(1) => self.node(NodeKind::Copy),
            Term::Sink(1) => self.node(NodeKind::Sink),
            Term::EqTest(1) => self.node(NodeKind::Eq),
            Term::DummySource(1) => self.node(NodeKind::Source),
            Term::Cell(name) => {
                let occurrence = self.cells;
                self.cells += 1;
                self.node(NodeKind::Cell {
                    name: name.clone(),
                    occurrence,
                })
            }
            other => unreachable!("not block-expanded: {other}"),
        }
    }
}

/// Builds the process network of `t` (block constants are expanded first).
pub fn instantiate(t: &Term, env: &CellEnv) -> Result<ProcessNet> {
    let sort = t.sort_of(env)?;
    let expanded = expand_blocks(t);
    let mut inst = Instantiator {
        env,
        nodes: Vec::new(),
        channels: Vec::new(),
        cells: 0,
    };
    let frag = inst.build(&expanded)?;
    let inputs = frag
        .inputs
        .iter()
        .enumerate()
        .map(|(i, &(n, p))| inst.connect(Endpoint::Env(i), Endpoint::Node(n, p)))
        .collect();
    let outputs = frag
        .outputs
        .iter()
        .enumerate()
        .map(|(j, &(n, p))| inst.connect(Endpoint::Node(n, p), Endpoint::Env(j)))
        .collect();
    Ok(ProcessNet {
        sort,
        nodes: inst.nodes,
        channels: inst.channels,
        inputs,
        outputs,
        slice: 0,
        domain_size: env.domain_size(),
    })
}

/// Outputs of a run together with its event log.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub trace: Trace,
    pub events: Vec<Event>,
}

impl ProcessNet {
    pub fn count(&self, kind: impl Fn(&NodeKind) -> bool) -> usize {
        self.nodes.iter().filter(|n| kind(&n.kind)).count()
    }

    /// Runs `slices` time slices from the current state.
    pub fn run(
        &mut self,
        inputs: &[Stream],
        slices: usize,
        scheduler: Scheduler,
    ) -> Result<RunResult> {
        if inputs.len() != self.sort.inputs {
            return Err(Error::InputArity {
                expected: self.sort.inputs,
                found: inputs.len(),
            });
        }
        let mut pending = Pending::new(scheduler);
        let mut events = Vec::new();
        let mut outputs = vec![Stream::default(); self.sort.outputs];
        for _ in 0..slices {
            let (slice_out, collision) = self.run_slice(inputs, &mut pending, &mut events);
            for (s, v) in outputs.iter_mut().zip(slice_out) {
                s.push(v);
            }
            if collision.is_some() {
                return Ok(RunResult {
                    trace: Trace { outputs, collision },
                    events,
                });
            }
        }
        Ok(RunResult {
            trace: Trace {
                outputs,
                collision: None,
            },
            events,
        })
    }

    fn send(
        &self,
        pending: &mut Pending,
        events: &mut Vec<Event>,
        channel: ChannelId,
        datum: Datum,
    ) {
        events.push(Event {
            slice: self.slice,
            kind: EventKind::Send,
            channel,
            datum,
        });
        pending.queue.push_back((channel, datum));
    }

    fn run_slice(
        &mut self,
        inputs: &[Stream],
        pending: &mut Pending,
        events: &mut Vec<Event>,
    ) -> (Vec<Option<Datum>>, Option<Collision>) {
        let slice = self.slice;
        let mut observed = vec![None; self.sort.outputs];
        let mut delivered = vec![false; self.channels.len()];
        let mut collision: Option<Collision> = None;

        for (i, s) in inputs.iter().enumerate() {
            if let Some(d) = s.at(slice) {
                self.send(pending, events, self.inputs[i], d);
            }
        }
        for id in 0..self.nodes.len() {
            if let State::Cell {
                emit: true,
                current,
                ..
            } = &self.nodes[id].state
            {
                let offers: Vec<(ChannelId, Datum)> = self.nodes[id]
                    .out
                    .iter()
                    .copied()
                    .zip(current.iter().copied())
                    .collect();
                for (ch, d) in offers {
                    self.send(pending, events, ch, d);
                }
            }
        }

        while let Some((ch, datum)) = pending.next() {
            assert!(
                !delivered[ch],
                "channel {ch} carried two data in slice {slice}"
            );
            delivered[ch] = true;
            match self.channels[ch].to {
                Endpoint::Env(j) => {
                    events.push(Event {
                        slice,
                        kind: EventKind::Commit,
                        channel: ch,
                        datum,
                    });
                    observed[j] = Some(datum);
                }
                Endpoint::Node(n, port) => {
                    events.push(Event {
                        slice,
                        kind: EventKind::Read,
                        channel: ch,
                        datum,
                    });
                    let out = self.nodes[n].out.clone();
                    let mut emit =
                        |me: &Self, c: ChannelId, d: Datum| me.send(pending, events, c, d);
                    let node = &mut self.nodes[n];
                    let mut to_send: [(ChannelId, Datum); 2] = [(usize::MAX, datum); 2];
                    let mut count = 0;
                    match &mut node.state {
                        State::Msd { seen } => {
                            assert!(!*seen, "minimal stream delayer over capacity");
                            *seen = true;
                            to_send[0] = (out[0], datum);
                            count = 1;
                        }
                        State::Copy => {
                            to_send = [(out[0], datum), (out[1], datum)];
                            count = 2;
                        }
                        State::Sink | State::Source => {}
                        State::Eq { waiting } => match waiting.take() {
                            None => *waiting = Some((port, datum)),
                            Some((other, x)) => {
                                debug_assert_ne!(other, port);
                                if x == datum {
                                    to_send[0] = (out[0], datum);
                                    count = 1;
                                }
                                // a finished test ignores the rest of the slice
                                *waiting = Some((usize::MAX, datum));
                            }
                        },
                        State::Cell { slots, .. } => {
                            if slots[port].is_some() {
                                let NodeKind::Cell { occurrence, .. } = node.kind else {
                                    unreachable!()
                                };
                                let c = Collision {
                                    tick: slice,
                                    cell: occurrence,
                                    port,
                                };
                                if collision
                                    .is_none_or(|old| (c.cell, c.port) < (old.cell, old.port))
                                {
                                    collision = Some(c);
                                }
                            } else {
                                slots[port] = Some(datum);
                            }
                        }
                    }
                    for &(c, d) in &to_send[..count] {
                        emit(self, c, d);
                    }
                }
            }
        }

        // end of slice
        let domain = self.domain_size;
        for node in &mut self.nodes {
            match &mut node.state {
                State::Msd { seen } => *seen = false,
                State::Eq { waiting } => *waiting = None,
                State::Cell {
                    def,
                    slots,
                    current,
                    emit,
                } => {
                    *emit = slots.iter().all(Option::is_some);
                    if *emit {
                        let consumed: Vec<Datum> = slots
                            .iter_mut()
                            .map(|s| s.take().expect("filled"))
                            .collect();
                        *current = def.apply(&consumed, domain).to_vec();
                    }
                }
                State::Copy | State::Sink | State::Source => {}
            }
        }
        self.slice += 1;
        (observed, collision)
    }
}

/// Instantiates and runs `t` with FIFO delivery.
pub fn simulate(t: &Term, env: &CellEnv, inputs: &[Stream], slices: usize) -> Result<RunResult> {
    instantiate(t, env)?.run(inputs, slices, Scheduler::Fifo)
}

pub fn trace(t: &Term, env: &CellEnv, inputs: &[Stream], slices: usize) -> Result<Trace> {
    Ok(simulate(t, env, inputs, slices)?.trace)
}

/// First divergence found by [`check_wire_identity`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WireDivergence {
    pub inputs: Vec<Stream>,
    /// `"I;f"` or `"f;I"`.
    pub side: &'static str,
    pub expected: Trace,
    pub found: Trace,
}

/// Compares `I(m) ; f`, `f` and `f ; I(n)` in the process model on random
/// inputs.
pub fn check_wire_identity(
    f: &Term,
    env: &CellEnv,
    horizon: usize,
    trials: usize,
    seed: u64,
) -> Result<Option<WireDivergence>> {
    let sort = f.sort_of(env)?;
    let pre = Term::seq(Term::Id(sort.inputs), f.clone());
    let post = Term::seq(f.clone(), Term::Id(sort.outputs));
    let nets = [
        instantiate(&pre, env)?,
        instantiate(f, env)?,
        instantiate(&post, env)?,
    ];
    let mut rng = rng_for(seed, 0x5749_5245);
    for _ in 0..trials {
        let inputs = random_streams(&mut rng, sort.inputs, horizon, env.domain_size(), 0.7);
        let [a, b, c] = nets
            .clone()
            .map(|mut n| n.run(&inputs, horizon, Scheduler::Fifo));
        let (a, b, c) = (a?.trace, b?.trace, c?.trace);
        for (side, other) in [("I;f", a), ("f;I", c)] {
            if other != b {
                return Ok(Some(WireDivergence {
                    inputs,
                    side,
                    expected: b,
                    found: other,
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(x: u16) -> Option<Datum> {
        Some(Datum(x))
    }

    #[test]
    fn instantiation_shapes() {
        let env = CellEnv::succ_mod(4);
        let net = instantiate(&Term::Id(1), &env).unwrap();
        assert_eq!(net.nodes.len(), 1);
        assert_eq!(net.nodes[0].kind, NodeKind::Msd);
        assert_eq!((net.inputs.len(), net.outputs.len()), (1, 1));

        let net = instantiate(&Term::feed(Term::Copy(1), 1), &env).unwrap();
        assert_eq!(net.count(|k| *k == NodeKind::Copy), 1);
        assert_eq!(net.count(|k| *k == NodeKind::Msd), 1);
        assert_eq!(net.nodes.len(), 2);

        let net = instantiate(&Term::seq(Term::Id(1), Term::Id(1)), &env).unwrap();
        assert_eq!(net.count(|k| *k == NodeKind::Msd), 2);
        let internal = net
            .channels
            .iter()
            .filter(|c| matches!((c.from, c.to), (Endpoint::Node(..), Endpoint::Node(..))))
            .count();
        assert_eq!(internal, 1);
    }

    #[test]
    fn wire_delivers_in_same_slice() {
        let env = CellEnv::numeric(2).unwrap();
        let out = trace(&Term::Id(1), &env, &[Stream::new(vec![d(1)])], 2).unwrap();
        assert_eq!(out.outputs[0].window(2), vec![d(1), None]);
    }

    #[test]
    fn cell_alone() {
        let env = CellEnv::succ_mod(4);
        let out = trace(
            &Term::cell("succ4"),
            &env,
            &[Stream::new(vec![d(0), None, None])],
            3,
        )
        .unwrap();
        assert_eq!(out.outputs[0].window(3), vec![d(0), d(1), None]);
    }

    #[test]
    fn counter_feedback() {
        let env = CellEnv::succ_mod(4);
        let t = Term::feed(Term::seq(Term::cell("succ4"), Term::Copy(1)), 1);
        let out = trace(&t, &env, &[], 8).unwrap();
        assert_eq!(
            out.outputs[0].window(8),
            [0, 1, 2, 3, 0, 1, 2, 3].map(d).to_vec()
        );
    }

    #[test]
    fn equality_drops_unpaired_datum() {
        let env = CellEnv::numeric(2).unwrap();
        let x = Stream::new(vec![d(1), d(1), None]);
        let y = Stream::new(vec![None, d(1), d(1)]);
        let out = trace(&Term::EqTest(1), &env, &[x, y], 3).unwrap();
        assert_eq!(out.outputs[0].window(3), vec![None, d(1), None]);
    }

    #[test]
    fn fed_back_equality_never_fires() {
        // the looped operand never arrives, so each datum is dropped at the
        // end of its slice
        let env = CellEnv::numeric(2).unwrap();
        let t = Term::feed(Term::seq(Term::EqTest(1), Term::Copy(1)), 1);
        let run = simulate(&t, &env, &[Stream::new(vec![d(0), d(1), d(0)])], 3).unwrap();
        assert_eq!(run.trace.outputs[0], Stream::ticks());
        let reads = run
            .events
            .iter()
            .filter(|e| e.kind == EventKind::Read)
            .count();
        assert_eq!(reads, 3);
    }

    #[test]
    fn event_log_format() {
        let env = CellEnv::numeric(2).unwrap();
        let run = simulate(&Term::Id(1), &env, &[Stream::new(vec![d(1)])], 1).unwrap();
        let lines: Vec<String> = run.events.iter().map(|e| alloc::format!("{e}")).collect();
        assert_eq!(
            lines,
            [
                "0\tsend\t0\t1",
                "0\tread\t0\t1",
                "0\tsend\t1\t1",
                "0\tcommit\t1\t1"
            ]
        );
    }

    #[test]
    fn wire_identity_for_constants_and_cells() {
        let env = CellEnv::succ_mod(4);
        for f in [
            Term::cell("succ4"),
            Term::EqTest(1),
            Term::Copy(1),
            Term::Sink(1),
            Term::DummySource(1),
        ] {
            assert_eq!(
                check_wire_identity(&f, &env, 16, 20, 7).unwrap(),
                None,
                "{f}"
            );
        }
    }
}
