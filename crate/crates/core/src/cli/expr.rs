//! Text syntax for marked groups:
//! `Z`, `Z^k`, `Z/n`, `F k`, `BS(1,m)`, `D n`, `S n`, `A n`, `Heis`, `Lamp`,
//! `mark(G; w1, …, wj)`, `direct(G,H)`, `free(G,H)`, `limit(cyclicseq)` and
//! `limit(powersseq)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::oracle::{catalog, direct, free, limit, subgroup_marking, CatalogSpec, GroupSequence, MarkedGroup};
use crate::words::{Alphabet, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupExpr {
    Catalog(CatalogSpec),
    /// The subgroup generated by a tuple of words of the inner group.
    Mark(Box<GroupExpr>, Vec<Word>),
    Direct(Box<GroupExpr>, Box<GroupExpr>),
    Free(Box<GroupExpr>, Box<GroupExpr>),
    Limit(SequenceName),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequenceName {
    Cyclic,
    Powers,
}

impl SequenceName {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "cyclicseq" | "cyclic" => Some(SequenceName::Cyclic),
            "powersseq" | "powers" => Some(SequenceName::Powers),
            _ => None,
        }
    }

    pub fn sequence(self) -> GroupSequence {
        match self {
            SequenceName::Cyclic => GroupSequence::cyclic(),
            SequenceName::Powers => GroupSequence::powers(),
        }
    }
}

impl fmt::Display for SequenceName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SequenceName::Cyclic => "cyclicseq",
            SequenceName::Powers => "powersseq",
        })
    }
}

impl GroupExpr {
    pub fn build(&self) -> Result<MarkedGroup> {
        Ok(match self {
            GroupExpr::Catalog(spec) => catalog(spec)?,
            GroupExpr::Mark(g, tuple) => {
                let g = g.build()?;
                for w in tuple {
                    g.check_rank(w)?;
                }
                subgroup_marking(&g, tuple).renamed(self.to_string())
            }
            GroupExpr::Direct(g, h) => direct(&g.build()?, &h.build()?).renamed(self.to_string()),
            GroupExpr::Free(g, h) => free(&g.build()?, &h.build()?).renamed(self.to_string()),
            GroupExpr::Limit(s) => limit(&s.sequence()).renamed(self.to_string()),
        })
    }
}

fn spec_text(spec: &CatalogSpec) -> String {
    use CatalogSpec::*;
    match spec {
        FreeAbelian(1) => "Z".into(),
        FreeAbelian(k) => format!("Z^{k}"),
        Cyclic(n) => format!("Z/{n}"),
        Abelian(moduli) => {
            // not produced by the parser; printed as a product of cyclic factors
            let parts: Vec<String> =
                moduli.iter().map(|&n| if n == 0 { "Z".to_string() } else { format!("Z/{n}") }).collect();
            parts.into_iter().reduce(|acc, p| format!("direct({acc},{p})")).unwrap_or_else(|| "Z^0".into())
        }
        Free(k) => format!("F {k}"),
        BaumslagSolitar(m) => format!("BS(1,{m})"),
        Dihedral(n) => format!("D {n}"),
        Symmetric(n) => format!("S {n}"),
        Alternating(n) => format!("A {n}"),
        Heisenberg => "Heis".into(),
        Lamplighter => "Lamp".into(),
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Catalog(spec) => f.write_str(&spec_text(spec)),
            GroupExpr::Mark(g, tuple) => {
                let words: Vec<String> =
                    tuple.iter().map(|w| Alphabet::standard(w.rank()).format(w)).collect();
                write!(f, "mark({g}; {})", words.join(", "))
            }
            GroupExpr::Direct(g, h) => write!(f, "direct({g},{h})"),
            GroupExpr::Free(g, h) => write!(f, "free({g},{h})"),
            GroupExpr::Limit(s) => write!(f, "limit({s})"),
        }
    }
}

pub fn parse_group_expr(text: &str) -> Result<GroupExpr> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0 };
    let e = p.expr()?;
    p.ws();
    if p.pos < p.chars.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        self.ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> String {
        self.ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn number(&mut self) -> Result<i64> {
        self.ws();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| {
            self.pos = start;
            self.err("expected a number")
        })
    }

    fn natural(&mut self) -> Result<u64> {
        let at = self.pos;
        let n = self.number()?;
        u64::try_from(n).map_err(|_| Error::Parse { pos: at, msg: "expected a nonnegative number".into() })
    }

    fn expr(&mut self) -> Result<GroupExpr> {
        let start = self.pos;
        let name = self.ident();
        use CatalogSpec::*;
        let cat = |s| Ok(GroupExpr::Catalog(s));
        match name.as_str() {
            "Z" => {
                if self.eat('^') {
                    cat(FreeAbelian(self.natural()? as usize))
                } else if self.eat('/') {
                    cat(Cyclic(self.natural()?))
                } else {
                    cat(FreeAbelian(1))
                }
            }
            "F" => cat(Free(self.natural()? as usize)),
            "D" => cat(Dihedral(self.natural()?)),
            "S" => cat(Symmetric(self.natural()? as usize)),
            "A" => cat(Alternating(self.natural()? as usize)),
            "Heis" => cat(Heisenberg),
            "Lamp" => cat(Lamplighter),
            "BS" => {
                self.expect('(')?;
                let one = self.number()?;
                if one != 1 {
                    return Err(self.err("only BS(1,m) is supported"));
                }
                self.expect(',')?;
                let m = self.number()?;
                self.expect(')')?;
                cat(BaumslagSolitar(m))
            }
            "direct" | "free" => {
                self.expect('(')?;
                let g = self.expr()?;
                self.expect(',')?;
                let h = self.expr()?;
                self.expect(')')?;
                let (g, h) = (Box::new(g), Box::new(h));
                Ok(if name == "direct" { GroupExpr::Direct(g, h) } else { GroupExpr::Free(g, h) })
            }
            "limit" => {
                self.expect('(')?;
                let at = self.pos;
                let s = self.ident();
                let seq = SequenceName::parse(&s)
                    .ok_or(Error::Parse { pos: at, msg: format!("unknown sequence {s:?}") })?;
                self.expect(')')?;
                Ok(GroupExpr::Limit(seq))
            }
            "mark" => {
                self.expect('(')?;
                let g = self.expr()?;
                let rank = g.build()?.rank();
                self.expect(';')?;
                let mut tuple = Vec::new();
                loop {
                    self.ws();
                    let at = self.pos;
                    let mut depth = 0i32;
                    while let Some(c) = self.peek() {
                        match c {
                            '[' | '(' => depth += 1,
                            ']' if depth > 0 => depth -= 1,
                            ')' if depth > 0 => depth -= 1,
                            ',' | ')' if depth == 0 => break,
                            _ => {}
                        }
                        self.pos += 1;
                    }
                    let text: String = self.chars[at..self.pos].iter().collect();
                    let w = Alphabet::standard(rank).parse(&text).map_err(|e| match e {
                        Error::Parse { pos, msg } => Error::Parse { pos: at + pos, msg },
                        other => other,
                    })?;
                    tuple.push(w);
                    if !self.eat(',') {
                        break;
                    }
                }
                self.expect(')')?;
                Ok(GroupExpr::Mark(Box::new(g), tuple))
            }
            "" => Err(self.err("expected a group")),
            _ => {
                self.pos = start;
                Err(self.err(&format!("unknown group {name:?}")))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(parse_group_expr("Z/5").unwrap(), GroupExpr::Catalog(CatalogSpec::Cyclic(5)));
        let m = parse_group_expr("mark(Z; a, a^3)").unwrap();
        assert!(matches!(&m, GroupExpr::Mark(_, t) if t.len() == 2));
        assert_eq!(m.build().unwrap().rank(), 2);
        let dinf = parse_group_expr("free(Z/2,Z/2)").unwrap().build().unwrap();
        assert_eq!(dinf.rank(), 2);
        assert!(dinf.is_relation(&Word::parse(2, "aa").unwrap()));
        assert!(!dinf.is_relation(&Word::parse(2, "(ab)^5").unwrap()));
    }

    #[test]
    fn round_trip() {
        for s in [
            "Z", "Z^3", "Z/7", "F 2", "BS(1,-2)", "D 5", "S 4", "A 5", "Heis", "Lamp",
            "mark(Z; a, aaa)", "direct(Z/2,free(Z,Z/3))", "limit(cyclicseq)", "mark(F 2; ABab, 1)",
        ] {
            let e = parse_group_expr(s).unwrap();
            assert_eq!(e.to_string(), s);
            assert_eq!(parse_group_expr(&e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_group_expr("direct(Z,Q)"), Err(Error::Parse { pos: 9, msg: "unknown group \"Q\"".into() }));
        assert!(matches!(parse_group_expr("mark(Z; a, b)"), Err(Error::Parse { pos: 11, .. })));
        assert!(matches!(parse_group_expr("Z/5 x"), Err(Error::Parse { pos: 4, .. })));
    }
}
