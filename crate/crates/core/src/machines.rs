//! Counter machines as a concrete enumeration of partial computable
//! functions, and the enumerations of index sets built on them.
//!
//! A program is a list of `INC r`, `DECJZ r t` (decrement `r`, or jump to `t`
//! when it is zero) and `HALT`. Execution starts at instruction 0 with the
//! input in register 0 and all other registers zero; running past the last
//! instruction also halts. The output is register 0.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::words::cantor_unpair;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Instr {
    Inc(usize),
    DecJz(usize, usize),
    Halt,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Program {
    instrs: Vec<Instr>,
}

impl Program {
    /// Fails when a jump target lies beyond the end of the program.
    pub fn new(instrs: Vec<Instr>) -> Result<Self> {
        for (i, ins) in instrs.iter().enumerate() {
            if let Instr::DecJz(_, t) = *ins {
                if t > instrs.len() {
                    return Err(Error::Malformed(format!("instruction {i} jumps to {t}, past the end")));
                }
            }
        }
        Ok(Program { instrs })
    }

    pub fn instrs(&self) -> &[Instr] {
        &self.instrs
    }

    /// `DECJZ 1 0`: register 1 is never touched, so it jumps back forever.
    pub fn diverging() -> Self {
        Program { instrs: vec![Instr::DecJz(1, 0)] }
    }

    /// A program that loops on input 0; distinct `k` give distinct programs.
    pub fn looping(k: usize) -> Self {
        Program { instrs: vec![Instr::DecJz(k + 1, 0)] }
    }

    /// A program that halts after exactly `p ≥ 1` steps on every input.
    pub fn halting_at(p: u64) -> Self {
        assert!(p >= 1, "halting needs at least one step");
        let mut instrs = vec![Instr::Inc(1); p as usize - 1];
        instrs.push(Instr::Halt);
        Program { instrs }
    }

    /// `n ↦ 0`.
    pub fn constant_zero() -> Self {
        Program { instrs: vec![Instr::DecJz(0, 2), Instr::DecJz(1, 0)] }
    }

    /// `n ↦ 1`.
    pub fn constant_one() -> Self {
        Program { instrs: vec![Instr::DecJz(0, 2), Instr::DecJz(1, 0), Instr::Inc(0)] }
    }

    /// Parses `INC 0 / DECJZ 0 3 / HALT`; newlines and `;` also separate
    /// instructions.
    pub fn parse(text: &str) -> Result<Self> {
        let mut instrs = Vec::new();
        for (i, part) in text.split(['/', ';', '\n']).enumerate() {
            let toks: Vec<&str> = part.split_whitespace().collect();
            let num = |s: &str| {
                s.parse::<usize>().map_err(|_| Error::Parse { pos: i, msg: format!("expected a number, got {s:?}") })
            };
            let ins = match toks.as_slice() {
                [] => continue,
                [op, r] if op.eq_ignore_ascii_case("inc") => Instr::Inc(num(r)?),
                [op, r, t] if op.eq_ignore_ascii_case("decjz") => Instr::DecJz(num(r)?, num(t)?),
                [op] if op.eq_ignore_ascii_case("halt") => Instr::Halt,
                _ => return Err(Error::Parse { pos: i, msg: format!("bad instruction {:?}", part.trim()) }),
            };
            instrs.push(ins);
        }
        Program::new(instrs)
    }

    /// The Gödel number: `0` is the empty program and `1 + ⟨head, tail⟩`
    /// prepends an instruction. Instruction codes are `0` for `HALT`,
    /// `2r+1` for `INC r` and `2⟨r,t⟩+2` for `DECJZ r t`. `None` when the
    /// number does not fit in a `u64`.
    pub fn encode(&self) -> Option<u64> {
        let mut code = 0u64;
        for ins in self.instrs.iter().rev() {
            let c = match *ins {
                Instr::Halt => 0,
                Instr::Inc(r) => (r as u64).checked_mul(2)?.checked_add(1)?,
                Instr::DecJz(r, t) => checked_pair(r as u64, t as u64)?.checked_mul(2)?.checked_add(2)?,
            };
            code = checked_pair(c, code)?.checked_add(1)?;
        }
        Some(code)
    }

    /// Total decoding: numbers that decode to a program with an
    /// out-of-range jump give [`Program::diverging`].
    pub fn decode(index: u64) -> Self {
        let mut instrs = Vec::new();
        let mut rest = index;
        while rest > 0 {
            let (c, tail) = cantor_unpair(rest - 1);
            instrs.push(match c {
                0 => Instr::Halt,
                c if c % 2 == 1 => Instr::Inc(((c - 1) / 2) as usize),
                c => {
                    let (r, t) = cantor_unpair((c - 2) / 2);
                    Instr::DecJz(r as usize, t as usize)
                }
            });
            rest = tail;
        }
        Program::new(instrs).unwrap_or_else(|_| Program::diverging())
    }
}

fn checked_pair(n: u64, m: u64) -> Option<u64> {
    let s = n.checked_add(m)?;
    s.checked_mul(s.checked_add(1)?).map(|x| x / 2)?.checked_add(m)
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .instrs
            .iter()
            .map(|i| match i {
                Instr::Inc(r) => format!("INC {r}"),
                Instr::DecJz(r, t) => format!("DECJZ {r} {t}"),
                Instr::Halt => "HALT".to_string(),
            })
            .collect();
        write!(f, "{}", parts.join(" / "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Run {
    /// Halted after `steps` executed instructions with this output.
    Halted { output: u64, steps: u64 },
    Running,
}

/// A machine in the middle of a run; it can be advanced step by step.
#[derive(Clone, Debug)]
pub struct Machine {
    program: Program,
    pc: usize,
    /// Sparse: register indices come from decoded numbers and can be huge.
    registers: HashMap<usize, u64>,
    steps: u64,
    halted: bool,
}

impl Machine {
    pub fn new(program: Program, input: u64) -> Self {
        let halted = program.instrs.is_empty();
        Machine { program, pc: 0, registers: HashMap::from([(0, input)]), steps: 0, halted }
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    fn reg(&mut self, r: usize) -> &mut u64 {
        self.registers.entry(r).or_insert(0)
    }

    /// Executes one instruction. Returns false if the machine had halted.
    pub fn step(&mut self) -> bool {
        if self.halted {
            return false;
        }
        self.steps += 1;
        match self.program.instrs[self.pc] {
            Instr::Inc(r) => {
                *self.reg(r) += 1;
                self.pc += 1;
            }
            Instr::DecJz(r, t) => {
                let v = self.reg(r);
                if *v == 0 {
                    self.pc = t;
                } else {
                    *v -= 1;
                    self.pc += 1;
                }
            }
            Instr::Halt => {
                self.halted = true;
                return true;
            }
        }
        if self.pc >= self.program.instrs.len() {
            self.halted = true;
        }
        true
    }

    /// Runs until the machine has executed `steps` instructions in total.
    pub fn run_to(&mut self, steps: u64) -> Run {
        while self.steps < steps && self.step() {}
        self.state()
    }

    pub fn state(&self) -> Run {
        if self.halted {
            Run::Halted { output: self.registers[&0], steps: self.steps }
        } else {
            Run::Running
        }
    }
}

/// Simulates at most `steps` instructions.
pub fn run_bounded(program: &Program, input: u64, steps: u64) -> Run {
    Machine::new(program.clone(), input).run_to(steps)
}

/// Runs machine number `index` on `input` for at most `steps` instructions.
pub fn run_index(index: u64, input: u64, steps: u64) -> Run {
    run_bounded(&Program::decode(index), input, steps)
}

/// Enumeration stages: each item is the batch of values found at that stage.
pub type Stages = Box<dyn Iterator<Item = Vec<u64>> + Send>;

type StageFactory = Arc<dyn Fn() -> Stages + Send + Sync>;

/// A replayable enumeration of a set of naturals, organised in stages: each
/// stage emits finitely many (possibly zero) elements, so a prefix of `N`
/// stages is always computable.
#[derive(Clone)]
pub struct Enumerator {
    factory: StageFactory,
}

impl fmt::Debug for Enumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Enumerator")
    }
}

impl Enumerator {
    pub fn new(factory: impl Fn() -> Stages + Send + Sync + 'static) -> Self {
        Enumerator { factory: Arc::new(factory) }
    }

    /// Stage `n` emits `n` when `pred(n)` holds.
    pub fn recursive(pred: impl Fn(u64) -> bool + Send + Sync + Clone + 'static) -> Self {
        Enumerator::new(move || {
            let pred = pred.clone();
            Box::new((0u64..).map(move |n| if pred(n) { vec![n] } else { Vec::new() }))
        })
    }

    /// A finite set, emitted at stage 0.
    pub fn finite(values: Vec<u64>) -> Self {
        Enumerator::new(move || Box::new(std::iter::once(values.clone()).chain(std::iter::repeat(Vec::new()))))
    }

    /// A fresh run, one item per stage.
    pub fn stages(&self) -> Stages {
        (self.factory)()
    }

    /// All elements emitted during the first `stages` stages, in order.
    pub fn prefix(&self, stages: usize) -> Vec<u64> {
        self.stages().take(stages).flatten().collect()
    }

    /// Elements in emission order. Blocks forever after the last element of
    /// a finite set.
    pub fn values(&self) -> impl Iterator<Item = u64> {
        self.stages().flatten()
    }

    /// The first `n` elements (waits as long as needed for them).
    pub fn first(&self, n: usize) -> Vec<u64> {
        self.values().take(n).collect()
    }
}

/// Stage `t` starts machine `t` on its own index and advances every machine
/// started so far by one instruction, emitting `(index, output)` for the
/// machines that halt in that stage.
struct SelfApplication {
    stage: u64,
    live: Vec<(u64, Machine)>,
}

impl Iterator for SelfApplication {
    type Item = Vec<(u64, u64)>;

    fn next(&mut self) -> Option<Self::Item> {
        let t = self.stage;
        self.stage += 1;
        let m = Machine::new(Program::decode(t), t);
        let mut out = Vec::new();
        if let Run::Halted { output, .. } = m.state() {
            out.push((t, output));
        } else {
            self.live.push((t, m));
        }
        self.live.retain_mut(|(i, m)| {
            m.step();
            match m.state() {
                Run::Halted { output, .. } => {
                    out.push((*i, output));
                    false
                }
                Run::Running => true,
            }
        });
        out.sort_unstable();
        Some(out)
    }
}

fn self_application(output: u64) -> Enumerator {
    Enumerator::new(move || {
        Box::new(
            SelfApplication { stage: 0, live: Vec::new() }
                .map(move |v| v.into_iter().filter(|&(_, o)| o == output).map(|(i, _)| i).collect()),
        )
    })
}

/// `P = {n : φ_n(n) = 0}` and `Q = {n : φ_n(n) = 1}`: disjoint, recursively
/// enumerable and recursively inseparable.
pub fn inseparable_pq() -> (Enumerator, Enumerator) {
    (self_application(0), self_application(1))
}

/// Emits the base enumeration's stage `t` only while machine `l` (on input 0)
/// is still running after `t` steps. If it halts at step `s`, exactly the
/// elements of stages `0..s` are emitted.
pub fn gated(base: &Enumerator, l: &Program) -> Enumerator {
    let base = base.clone();
    let l = l.clone();
    Enumerator::new(move || {
        let mut m = Machine::new(l.clone(), 0);
        let mut t = 0u64;
        Box::new(base.stages().map(move |items| {
            let running = m.run_to(t) == Run::Running;
            t += 1;
            if running {
                items
            } else {
                Vec::new()
            }
        }))
    })
}

/// `(P_l, Q_l)`: the sets of [`inseparable_pq`] gated by a run of `l`.
pub fn pq_halting_family(l: &Program) -> (Enumerator, Enumerator) {
    let (p, q) = inseparable_pq();
    (gated(&p, l), gated(&q, l))
}

/// The increasing extraction `f̂` of an enumeration: its values in emission
/// order, keeping only those larger than everything kept before.
fn increasing(base: &Enumerator) -> impl Iterator<Item = u64> {
    let mut best: Option<u64> = None;
    base.values().filter(move |&v| {
        if best.is_none_or(|b| v > b) {
            best = Some(v);
            true
        } else {
            false
        }
    })
}

/// While `l` runs, stage `t` emits `f̂(t)`. If `l` halts at step `s`, the
/// enumeration switches to `base ∩ {0, …, f̂(s−1)}` read from the
/// unrestricted base enumeration (nothing when `s = 0`). The base must be
/// infinite.
pub fn nct(base: &Enumerator, l: &Program) -> Enumerator {
    let base = base.clone();
    let l = l.clone();
    Enumerator::new(move || {
        let mut fhat = increasing(&base);
        let mut m = Machine::new(l.clone(), 0);
        let mut t = 0u64;
        let mut last: Option<u64> = None;
        let mut after: Option<(Stages, HashSet<u64>)> = None;
        let base = base.clone();
        Box::new(std::iter::from_fn(move || {
            if after.is_none() && m.run_to(t) == Run::Running {
                t += 1;
                let v = fhat.next().expect("the base set is infinite");
                last = Some(v);
                return Some(vec![v]);
            }
            let (stages, seen) = after.get_or_insert_with(|| (base.stages(), HashSet::new()));
            let bound = last;
            let items = stages.next().unwrap_or_default();
            Some(
                items
                    .into_iter()
                    .filter(|&v| bound.is_some_and(|b| v <= b) && seen.insert(v))
                    .collect(),
            )
        }))
    })
}

/// `(P_l, Q_l)` built with [`nct`] from the sets of [`inseparable_pq`]:
/// uniformly enumerable, but not uniformly recursive in `l`.
pub fn pq_nct_family(l: &Program) -> (Enumerator, Enumerator) {
    let (p, q) = inseparable_pq();
    (nct(&p, l), nct(&q, l))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn runs() {
        let halt = Program::parse("HALT").unwrap();
        assert_eq!(run_bounded(&halt, 5, 10), Run::Halted { output: 5, steps: 1 });
        assert_eq!(run_bounded(&Program::looping(0), 0, 1_000_000), Run::Running);
        let inc = Program::parse("INC 0 / HALT").unwrap();
        assert_eq!(run_bounded(&inc, 3, 10), Run::Halted { output: 4, steps: 2 });
        assert_eq!(run_bounded(&Program::constant_zero(), 7, 100), Run::Halted { output: 0, steps: 15 });
        assert!(matches!(run_bounded(&Program::constant_one(), 7, 100), Run::Halted { output: 1, .. }));
        for p in 1..10 {
            assert_eq!(run_bounded(&Program::halting_at(p), 0, p - 1), Run::Running);
            assert!(matches!(run_bounded(&Program::halting_at(p), 0, p), Run::Halted { steps, .. } if steps == p));
        }
    }

    #[test]
    fn parsing() {
        let p = Program::parse("INC 0 / DECJZ 0 3 / HALT").unwrap();
        assert_eq!(p.instrs(), &[Instr::Inc(0), Instr::DecJz(0, 3), Instr::Halt]);
        assert_eq!(Program::parse(&p.to_string()).unwrap(), p);
        assert!(Program::parse("DECJZ 0 9").is_err());
        assert!(Program::parse("JMP 2").is_err());
    }

    #[test]
    fn encoding() {
        assert_eq!(Program::decode(0).instrs(), &[]);
        assert_eq!(Program::decode(1).instrs(), &[Instr::Halt]);
        assert_eq!(Program::constant_zero().encode(), Some(288));
        assert_eq!(Program::constant_one().encode(), Some(691));
        for n in 0..5000 {
            let p = Program::decode(n);
            if p != Program::diverging() {
                assert_eq!(p.encode(), Some(n));
            }
        }
    }

    #[test]
    fn inseparable_sets() {
        let (p, q) = inseparable_pq();
        let ps = p.prefix(3000);
        let qs = q.prefix(3000);
        assert!(ps.contains(&0) && qs.contains(&1));
        assert!(ps.contains(&288) && qs.contains(&691));
        assert!(ps.iter().all(|x| !qs.contains(x)));
        for &n in ps.iter().take(50) {
            assert!(matches!(run_index(n, n, 1 << 20), Run::Halted { output: 0, .. }));
        }
        let looping = Program::looping(0).encode().unwrap();
        assert!(!ps.contains(&looping) && !qs.contains(&looping));
        assert_eq!(p.prefix(500), ps[..p.prefix(500).len()].to_vec());
    }

    #[test]
    fn halting_family() {
        let (p, _) = inseparable_pq();
        let (pl, _) = pq_halting_family(&Program::looping(0));
        assert_eq!(pl.first(20), p.first(20));
        let (pl, ql) = pq_halting_family(&Program::halting_at(3));
        let full = p.prefix(3);
        assert_eq!(pl.prefix(2000), full);
        assert!(ql.prefix(2000).iter().all(|x| q_contains(*x)));
    }

    fn q_contains(n: u64) -> bool {
        matches!(run_index(n, n, 1 << 20), Run::Halted { output: 1, .. })
    }

    #[test]
    fn nct_family() {
        let evens = Enumerator::new(|| {
            // emits out of order: 4k+2, then 4k
            Box::new((0u64..).map(|k| vec![4 * k + 2, 4 * k]))
        });
        let running = nct(&evens, &Program::looping(0)).prefix(30);
        assert!(running.windows(2).all(|w| w[0] < w[1]));
        let halting = nct(&evens, &Program::halting_at(5));
        let fhat: Vec<u64> = increasing(&evens).take(5).collect();
        let mut got = halting.prefix(200);
        got.sort_unstable();
        got.dedup();
        let want: Vec<u64> = (0..=fhat[4]).filter(|x| x % 2 == 0).collect();
        assert_eq!(got, want);
        let (p, q) = pq_nct_family(&Program::looping(0));
        let (ps, qs) = (p.prefix(5), q.prefix(5));
        assert_eq!(ps, vec![0, 288, 453, 721, 1015]);
        assert!(ps.windows(2).all(|w| w[0] < w[1]));
        assert!(ps.iter().all(|x| !qs.contains(x)));
    }
}
