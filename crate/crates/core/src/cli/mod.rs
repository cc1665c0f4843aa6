//! The `mgroups` command line. [`run`] does all the work and returns the exit
//! code with the text to print, so the binary stays a thin wrapper.
//!
//! Exit codes: 0 verified / true, 1 refuted / false, 2 unknown, 3 error.

mod expr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::clopen::{incoherent_semidecide, inclusion_semidecide, member, BasicClopenSet};
use crate::error::{Error, Result};
use crate::machines::{run_bounded, Program, Run};
use crate::markov::{diagonal_group, distinguish_semidecide};
use crate::metric::{ball, cayley_distance, distance, Dyadic};
use crate::miller::{l3_wp, step3_presentation, trivializes, Presentation};
use crate::oracle::{limit, MarkedGroup};
use crate::properties::{evaluate, Property};
use crate::verdict::Verdict;
use crate::words::{Alphabet, Word};

pub use expr::{parse_group_expr, GroupExpr, SequenceName};

#[derive(Parser, Debug)]
#[command(name = "mgroups", version, about = "Marked groups as word-problem oracles")]
struct Cli {
    /// Budget for semi-decision procedures.
    #[arg(long, global = true, default_value_t = 100_000)]
    fuel: u64,
    /// JSON output (the default for every command except `miller gen`).
    #[arg(long, global = true)]
    json: bool,
    /// Emit a Cayley ball as DOT, to stdout or to the given file.
    #[arg(long, global = true, num_args = 0..=1, value_name = "FILE")]
    dot: Option<Option<String>>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Distance from the first disagreeing bit among the first `bits`.
    Dist {
        g: String,
        h: String,
        #[arg(long, default_value_t = 64)]
        bits: u64,
    },
    /// Cayley distance from balls up to `radius`.
    Cdist {
        g: String,
        h: String,
        #[arg(long, default_value_t = 6)]
        radius: usize,
    },
    /// Cayley ball of radius `r`.
    Ball { g: String, r: usize },
    /// Bit `n` of the group: whether the `n`-th shortlex word is trivial.
    Bit { g: String, n: u64 },
    /// Property check: abelian, nilpotent, card, finite, torsion, center,
    /// perfect, rank, virtually-cyclic, not-icc, not-orderable, not-hyperbolic.
    Prop {
        name: String,
        /// The group (may be split over several arguments, as in `F 2`).
        #[arg(required = true, num_args = 1..)]
        group: Vec<String>,
        /// Parameter of nilpotent (class), card (bound) and rank (bound).
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, default_value_t = 1)]
        delta: u64,
        #[arg(long, default_value_t = 8)]
        radius: usize,
    },
    /// Basic clopen sets, written `{R: ab, b^2 | S: ba}`.
    Clopen {
        #[command(subcommand)]
        cmd: ClopenCmd,
    },
    /// Bits of the limit of a named sequence (cyclicseq, powersseq).
    Limit {
        sequence: String,
        #[arg(long, default_value_t = 64)]
        bits: u64,
        /// Also report the distance from this group over the same bits.
        #[arg(long)]
        against: Option<String>,
    },
    /// Diagonal groups controlled by a counter machine
    Markov {
        #[command(subcommand)]
        cmd: MarkovCmd,
    },
    /// Miller's gadget: presentations, word problem and collapse
    Miller {
        #[command(subcommand)]
        cmd: MillerCmd,
    },
    /// Counter machines
    Machine {
        #[command(subcommand)]
        cmd: MachineCmd,
    },
}

#[derive(Subcommand, Debug)]
enum ClopenCmd {
    /// Whether the group satisfies the relations and none of the irrelations.
    Member { group: String, set: String },
    /// Searches a proof that the set is empty.
    Incoherent {
        set: String,
        #[arg(long, default_value_t = 2)]
        rank: usize,
    },
    /// Whether the union of the left sets lies in the union of the right sets.
    Subset {
        #[arg(long, required = true)]
        left: Vec<String>,
        #[arg(long)]
        right: Vec<String>,
        #[arg(long, default_value_t = 2)]
        rank: usize,
    },
}

#[derive(Subcommand, Debug)]
enum MarkovCmd {
    /// Compares the diagonal group of a machine with the limit.
    Demo {
        #[arg(long, default_value = "cyclic")]
        sequence: String,
        /// A Gödel number, `builtin:loop`, `builtin:loop@k` or `builtin:halt@p`.
        #[arg(long)]
        machine: String,
        #[arg(long, default_value_t = 500)]
        scan_bits: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Emit {
    L3,
    Pi,
}

#[derive(Subcommand, Debug)]
enum MillerCmd {
    /// The gadget presentation (or its clopen set) for a base and a word.
    Gen {
        #[arg(long)]
        base: String,
        #[arg(long)]
        w: String,
        #[arg(long, value_enum, default_value_t = Emit::L3)]
        emit: Emit,
    },
    /// Word problem of the gadget over a catalog base group. Words use the
    /// base's letters followed by the first three unused ones.
    Wp {
        #[arg(long)]
        base: String,
        #[arg(long)]
        w: String,
        #[arg(long)]
        query: String,
    },
    /// Searches the collapse of the gadget once `extra` is imposed.
    Trivialize {
        #[arg(long, default_value = "<x>")]
        base: String,
        #[arg(long, default_value = "x")]
        w: String,
        /// Defaults to `w`.
        #[arg(long)]
        extra: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum MachineCmd {
    /// Runs a program such as `INC 0 / DECJZ 0 3 / HALT`.
    Run {
        program: String,
        input: u64,
        #[arg(long, default_value_t = 10_000)]
        steps: u64,
    },
}

/// What a command printed and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }
}

/// Parses and executes one invocation (`args[0]` is the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { Outcome::ok(0, text) } else { Outcome { code, stdout: String::new(), stderr: text } };
        }
    };
    match execute(&cli) {
        Ok(o) => o,
        Err(e) => Outcome { code: 3, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn group(text: &str) -> Result<MarkedGroup> {
    parse_group_expr(text)?.build()
}

fn line(v: Value) -> String {
    format!("{v}\n")
}

fn verdict_outcome(v: &Verdict) -> Outcome {
    Outcome::ok(v.status.exit_code(), format!("{}\n", v.to_json()))
}

fn dyadic(d: Dyadic) -> Value {
    json!({ "distance": d.to_string(), "exact": d.is_exact() })
}

fn property(name: &str, n: Option<u64>, delta: u64, radius: usize) -> Result<Property> {
    let need = |what: &str| n.ok_or_else(|| Error::Malformed(format!("{name} needs --n <{what}>")));
    Ok(match name {
        "abelian" => Property::Abelian,
        "nilpotent" => Property::NilpotentClass(need("class")? as usize),
        "card" => Property::CardAtMost(need("bound")?),
        "finite" => Property::Finite,
        "torsion" => Property::Torsion,
        "center" => Property::Center,
        "perfect" => Property::Perfect,
        "rank" => Property::RankAtMost(need("bound")? as usize),
        "virtually-cyclic" => Property::VirtuallyCyclic,
        "not-icc" => Property::NotIcc,
        "not-orderable" => Property::NotOrderable,
        "not-hyperbolic" => Property::NotHyperbolic { delta, radius },
        _ => {
            return Err(Error::Malformed(format!(
                "unknown property {name:?}; expected one of {}",
                Property::names().join(", ")
            )))
        }
    })
}

/// `index`, `builtin:loop[@k]` or `builtin:halt@p`.
pub fn parse_machine(text: &str) -> Result<Program> {
    let bad = || Error::Malformed(format!("unknown machine {text:?}"));
    if let Ok(i) = text.parse::<u64>() {
        return Ok(Program::decode(i));
    }
    let rest = text.strip_prefix("builtin:").ok_or_else(bad)?;
    match rest.split_once('@') {
        None if rest == "loop" => Ok(Program::looping(0)),
        Some(("loop", k)) => Ok(Program::looping(k.parse().map_err(|_| bad())?)),
        Some(("halt", p)) => {
            let p: u64 = p.parse().map_err(|_| bad())?;
            if p == 0 {
                return Err(Error::Malformed("machines halt after at least one step".into()));
            }
            Ok(Program::halting_at(p))
        }
        _ => Err(bad()),
    }
}

fn l3_alphabet(base: &Alphabet) -> Result<Alphabet> {
    let mut names = base.names().to_vec();
    names.extend(('a'..='z').filter(|c| !base.names().contains(c)).take(3));
    Alphabet::new(names)
}

fn execute(cli: &Cli) -> Result<Outcome> {
    Ok(match &cli.cmd {
        Cmd::Dist { g, h, bits } => {
            if *bits == 0 {
                return Err(Error::Malformed("--bits must be at least 1".into()));
            }
            Outcome::ok(0, line(dyadic(distance(&group(g)?, &group(h)?, bits - 1))))
        }
        Cmd::Cdist { g, h, radius } => Outcome::ok(0, line(dyadic(cayley_distance(&group(g)?, &group(h)?, *radius)))),
        Cmd::Ball { g, r } => {
            let b = ball(&group(g)?, *r);
            match &cli.dot {
                Some(Some(path)) => {
                    std::fs::write(path, b.to_dot()).map_err(|e| Error::Malformed(format!("{path}: {e}")))?;
                    Outcome::ok(0, line(json!({ "vertices": b.len(), "closed": b.closed, "dot": path })))
                }
                Some(None) => Outcome::ok(0, b.to_dot()),
                None => Outcome::ok(0, format!("{}\n", b.to_json())),
            }
        }
        Cmd::Bit { g, n } => {
            let g = group(g)?;
            let w = Word::from_shortlex(g.rank(), *n);
            let bit = g.bit_of(&w, *n);
            Outcome::ok(0, line(json!({ "index": n, "word": Alphabet::standard(g.rank()).format(&w), "bit": bit })))
        }
        Cmd::Prop { name, group: parts, n, delta, radius } => {
            let g = group(&parts.join(" "))?;
            verdict_outcome(&evaluate(&g, &property(name, *n, *delta, *radius)?, cli.fuel)?)
        }
        Cmd::Clopen { cmd } => match cmd {
            ClopenCmd::Member { group: g, set } => {
                let g = group(g)?;
                let omega = BasicClopenSet::parse(g.rank(), set)?;
                let m = member(&g, &omega)?;
                Outcome::ok(if m { 0 } else { 1 }, line(json!({ "member": m })))
            }
            ClopenCmd::Incoherent { set, rank } => {
                verdict_outcome(&incoherent_semidecide(&BasicClopenSet::parse(*rank, set)?, cli.fuel))
            }
            ClopenCmd::Subset { left, right, rank } => {
                let parse = |sets: &[String]| sets.iter().map(|s| BasicClopenSet::parse(*rank, s)).collect::<Result<Vec<_>>>();
                verdict_outcome(&inclusion_semidecide(&parse(left)?, &parse(right)?, cli.fuel)?)
            }
        },
        Cmd::Limit { sequence, bits, against } => {
            let seq = SequenceName::parse(sequence)
                .ok_or_else(|| Error::Malformed(format!("unknown sequence {sequence:?}")))?
                .sequence();
            let l = limit(&seq);
            let text: String = (0..*bits).map(|n| char::from(b'0' + l.bit(n))).collect();
            let mut out = json!({ "sequence": seq.name(), "bits": text });
            if let Some(h) = against {
                if *bits == 0 {
                    return Err(Error::Malformed("--bits must be at least 1".into()));
                }
                out["distance"] = dyadic(distance(&l, &group(h)?, bits - 1));
            }
            Outcome::ok(0, line(out))
        }
        Cmd::Markov { cmd: MarkovCmd::Demo { sequence, machine, scan_bits } } => {
            let seq = SequenceName::parse(sequence)
                .ok_or_else(|| Error::Malformed(format!("unknown sequence {sequence:?}")))?
                .sequence();
            let program = parse_machine(machine)?;
            let gamma = diagonal_group(&seq, &program);
            let lim = limit(&seq);
            let halted = match run_bounded(&program, 0, *scan_bits) {
                Run::Halted { steps, .. } => Some(steps),
                Run::Running => None,
            };
            let v = distinguish_semidecide(&gamma, &lim, 2 * scan_bits)?;
            let out = json!({
                "machine": program.to_string(),
                "halted_at": halted,
                "distinguish": serde_json::to_value(&v).expect("verdicts serialize"),
            });
            Outcome::ok(v.status.exit_code(), line(out))
        }
        Cmd::Miller { cmd } => miller(cmd, cli)?,
        Cmd::Machine { cmd: MachineCmd::Run { program, input, steps } } => {
            let p = Program::parse(program)?;
            let out = match run_bounded(&p, *input, *steps) {
                Run::Halted { output, steps } => json!({ "status": "halted", "output": output, "steps": steps }),
                Run::Running => json!({ "status": "running", "steps": steps }),
            };
            Outcome::ok(0, line(out))
        }
    })
}

fn miller(cmd: &MillerCmd, cli: &Cli) -> Result<Outcome> {
    Ok(match cmd {
        MillerCmd::Gen { base, w, emit } => {
            let base = Presentation::parse(base)?;
            let out = step3_presentation(&base, &base.parse_word(w)?)?;
            let fmt = |ws: &[Word]| ws.iter().map(|r| out.l3.format_word(r)).collect::<Vec<_>>();
            match (emit, cli.json) {
                (Emit::L3, false) => Outcome::ok(0, format!("{}\n", out.l3)),
                (Emit::Pi, false) => Outcome::ok(
                    0,
                    format!("{{R: {} | S: {}}}\n", fmt(out.pi.relations()).join(", "), fmt(out.pi.irrelations()).join(", ")),
                ),
                (Emit::L3, true) => Outcome::ok(
                    0,
                    line(json!({ "generators": out.l3.alphabet().names().iter().collect::<String>(), "relators": fmt(out.l3.relators()) })),
                ),
                (Emit::Pi, true) => Outcome::ok(
                    0,
                    line(json!({ "relations": fmt(out.pi.relations()), "irrelations": fmt(out.pi.irrelations()) })),
                ),
            }
        }
        MillerCmd::Wp { base, w, query } => {
            let g = group(base)?;
            let names = Alphabet::standard(g.rank());
            let l3 = l3_wp(&g, &names.parse(w)?)?;
            let q = l3_alphabet(&names)?.parse(query)?;
            let rel = l3.is_relation(&q);
            Outcome::ok(if rel { 0 } else { 1 }, line(json!({ "relation": rel })))
        }
        MillerCmd::Trivialize { base, w, extra } => {
            let base = Presentation::parse(base)?;
            let out = step3_presentation(&base, &base.parse_word(w)?)?;
            let extra = out.l3.parse_word(extra.as_deref().unwrap_or(w))?;
            verdict_outcome(&trivializes(&out, &extra, cli.fuel)?)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> Outcome {
        run(std::iter::once("mgroups").chain(args.iter().copied()))
    }

    #[test]
    fn documented_invocations() {
        let o = call(&["dist", "Z/2", "Z", "--bits", "10"]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "{\"distance\":\"2^-3\",\"exact\":true}\n"));
        let o = call(&["prop", "abelian", "F", "2"]);
        assert_eq!(o.code, 1);
        assert!(o.stdout.contains("\"status\":\"refuted\"") && o.stdout.contains("\"word\":\"ABab\""));
        let o = call(&["ball", "F 2", "2", "--dot"]);
        assert_eq!(o.stdout.matches("[label=\"").count() - o.stdout.matches("->").count(), 17);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["prop", "torsion", "Z", "--fuel", "100"]).code, 2);
        assert_eq!(call(&["prop", "finite", "Z/3"]).code, 0);
        assert_eq!(call(&["dist", "Q", "Z"]).code, 3);
        assert_eq!(call(&["nonsense"]).code, 3);
        assert_eq!(call(&["clopen", "member", "Z/2", "{R: aa}"]).code, 0);
        assert_eq!(call(&["clopen", "member", "Z", "{R: aa}"]).code, 1);
        assert_eq!(call(&["clopen", "incoherent", "{R: ab | S: ba}", "--fuel", "10000"]).code, 0);
        assert_eq!(call(&["--help"]).code, 0);
    }

    #[test]
    fn other_commands() {
        assert!(call(&["limit", "cyclicseq", "--bits", "8", "--against", "Z"]).stdout.contains("\"exact\":false"));
        let o = call(&["markov", "demo", "--machine", "builtin:halt@2", "--scan-bits", "50"]);
        assert_eq!(o.code, 0);
        assert_eq!(call(&["markov", "demo", "--machine", "builtin:loop", "--scan-bits", "50"]).code, 2);
        let o = call(&["miller", "gen", "--base", "<x>", "--w", "x"]);
        assert_eq!(o.stdout, "<x,a,b,c | AbaCBCbc, AABabaaCCBCbcc, AAAXBxbaaaCCCBccc, AAAAxbaaaaCCCCBcccc>\n");
        assert_eq!(call(&["miller", "wp", "--base", "Z", "--w", "a", "--query", "a"]).code, 1);
        assert_eq!(call(&["miller", "wp", "--base", "Z", "--w", "a", "--query", "BcbDCDcd"]).code, 0);
        assert_eq!(call(&["miller", "trivialize", "--fuel", "1000000"]).code, 0);
        let o = call(&["machine", "run", "INC 0 / INC 0 / HALT", "3"]);
        assert_eq!(o.stdout, "{\"output\":5,\"status\":\"halted\",\"steps\":3}\n");
    }

    #[test]
    fn deterministic() {
        for a in [
            &["prop", "perfect", "A 5", "--fuel", "20000"][..],
            &["ball", "Z^2", "3"],
            &["clopen", "subset", "--left", "{R: ab}", "--right", "{R: ba}"],
        ] {
            assert_eq!(call(a), call(a));
        }
    }
}
