//! Free-group words, the shortlex bijection between `ℕ` and `F_k`, and the
//! integer encodings built on top of it.
//!
//! Letters are ordered `s_1 < … < s_k < s_1⁻¹ < … < s_k⁻¹`. Every index and
//! binary expansion in the crate is computed under this order.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A generator `s_i` (`i ≥ 1`) or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        assert!(generator >= 1, "generator indices start at 1");
        let g = generator as i32;
        Letter(if inverse { -g } else { g })
    }

    pub fn pos(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub fn neg(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    /// Builds a letter from a signed index (`-2` is `s_2⁻¹`).
    pub fn from_signed(v: i32) -> Option<Self> {
        (v != 0).then_some(Letter(v))
    }

    pub fn signed(self) -> i32 {
        self.0
    }

    pub fn generator(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    /// Position of the letter in the alphabet order for rank `k`.
    pub fn alphabet_pos(self, rank: usize) -> usize {
        if self.0 > 0 {
            self.generator() - 1
        } else {
            rank + self.generator() - 1
        }
    }

    pub fn from_alphabet_pos(pos: usize, rank: usize) -> Self {
        if pos < rank {
            Letter::pos(pos + 1)
        } else {
            Letter::neg(pos - rank + 1)
        }
    }
}

/// All `2k` letters of rank `k`, in alphabet order.
pub fn alphabet(rank: usize) -> Vec<Letter> {
    (0..2 * rank).map(|p| Letter::from_alphabet_pos(p, rank)).collect()
}

/// A freely reduced word over `s_1^{±1}, …, s_k^{±1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(rank: usize) -> Self {
        Word { rank, letters: Vec::new() }
    }

    pub fn generator(rank: usize, generator: usize) -> Self {
        assert!((1..=rank).contains(&generator), "generator out of range");
        Word { rank, letters: vec![Letter::pos(generator)] }
    }

    pub fn letter(rank: usize, letter: Letter) -> Self {
        assert!(letter.generator() <= rank, "letter out of range");
        Word { rank, letters: vec![letter] }
    }

    /// Freely reduces `raw`. Fails when a letter exceeds the rank.
    pub fn reduce(raw: &[Letter], rank: usize) -> Result<Self> {
        if let Some(bad) = raw.iter().find(|l| l.generator() > rank) {
            return Err(Error::Malformed(format!(
                "generator {} out of range for rank {}",
                bad.generator(),
                rank
            )));
        }
        Ok(Word { rank, letters: free_reduce(raw.iter().copied()) })
    }

    /// Like [`Word::reduce`] for callers that already guarantee the range.
    pub(crate) fn reduce_unchecked(raw: impl IntoIterator<Item = Letter>, rank: usize) -> Self {
        Word { rank, letters: free_reduce(raw) }
    }

    pub fn from_signed(rank: usize, raw: &[i32]) -> Result<Self> {
        let letters: Vec<Letter> = raw
            .iter()
            .map(|&v| Letter::from_signed(v).ok_or_else(|| Error::Malformed("zero letter".into())))
            .collect::<Result<_>>()?;
        Word::reduce(&letters, rank)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    fn check_rank(&self, other: &Word) {
        assert_eq!(self.rank, other.rank, "words of different ranks combined");
    }

    pub fn mul(&self, other: &Word) -> Word {
        self.check_rank(other);
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Word { rank: self.rank, letters }
    }

    pub fn mul_letter(&self, l: Letter) -> Word {
        let mut letters = self.letters.clone();
        push_reduced(&mut letters, l);
        Word { rank: self.rank, letters }
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity(self.rank);
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `[self, other] = self⁻¹ other⁻¹ self other`.
    pub fn commutator(&self, other: &Word) -> Word {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &Word) -> Word {
        g.mul(self).mul(&g.inverse())
    }

    /// Replaces `s_i` by `images[i-1]`; the result lives in the images' rank.
    pub fn substitute(&self, images: &[Word]) -> Word {
        assert_eq!(images.len(), self.rank, "one image per generator required");
        let rank = images.first().map(|w| w.rank).unwrap_or(0);
        let mut letters = Vec::new();
        for &l in &self.letters {
            let img = &images[l.generator() - 1];
            if l.is_inverse() {
                for &m in img.letters.iter().rev() {
                    push_reduced(&mut letters, m.inverse());
                }
            } else {
                for &m in &img.letters {
                    push_reduced(&mut letters, m);
                }
            }
        }
        Word { rank, letters }
    }

    /// Reinterprets the word in a larger alphabet, shifting generator indices
    /// by `offset`.
    pub fn embed(&self, new_rank: usize, offset: usize) -> Word {
        assert!(self.rank + offset <= new_rank, "embedding does not fit");
        Word {
            rank: new_rank,
            letters: self
                .letters
                .iter()
                .map(|l| Letter::new(l.generator() + offset, l.is_inverse()))
                .collect(),
        }
    }

    /// Keeps only letters whose generator lies in `lo..=hi`, renumbered from 1,
    /// and freely reduces.
    pub fn project(&self, lo: usize, hi: usize) -> Word {
        let rank = hi + 1 - lo;
        Word::reduce_unchecked(
            self.letters
                .iter()
                .filter(|l| (lo..=hi).contains(&l.generator()))
                .map(|l| Letter::new(l.generator() + 1 - lo, l.is_inverse())),
            rank,
        )
    }

    /// Deletes every occurrence of `generator` (and its inverse), then reduces.
    pub fn delete_generator(&self, generator: usize) -> Word {
        Word::reduce_unchecked(
            self.letters.iter().copied().filter(|l| l.generator() != generator),
            self.rank,
        )
    }

    pub fn with_rank(&self, rank: usize) -> Result<Word> {
        Word::reduce(&self.letters, rank)
    }

    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let k = self.rank.max(other.rank);
            self.letters
                .iter()
                .map(|l| l.alphabet_pos(k))
                .cmp(other.letters.iter().map(|l| l.alphabet_pos(k)))
        })
    }

    /// Position of the word in the shortlex enumeration of `F_k`.
    ///
    /// Panics if the index does not fit in a `u64`.
    pub fn shortlex_index(&self) -> u64 {
        let k = self.rank as u64;
        let len = self.len() as u32;
        let index = words_shorter_than(self.rank, len);
        if len == 0 {
            return index;
        }
        let branch = 2 * k - 1;
        let mut offset = 0u64;
        let mut prev: Option<Letter> = None;
        for &l in &self.letters {
            let p = l.alphabet_pos(self.rank) as u64;
            let digit = match prev {
                None => p,
                Some(q) => {
                    let forbidden = q.inverse().alphabet_pos(self.rank) as u64;
                    if forbidden < p {
                        p - 1
                    } else {
                        p
                    }
                }
            };
            offset = offset
                .checked_mul(branch)
                .and_then(|v| v.checked_add(digit))
                .expect("shortlex index overflows u64");
            prev = Some(l);
        }
        index.checked_add(offset).expect("shortlex index overflows u64")
    }

    /// The `n`-th reduced word of rank `k` in shortlex order.
    pub fn from_shortlex(rank: usize, n: u64) -> Word {
        if rank == 0 {
            assert_eq!(n, 0, "rank 0 has a single word");
            return Word::identity(0);
        }
        let mut rest = n;
        let mut len = 0u32;
        if rank == 1 {
            let l = if n % 2 == 1 { Letter::pos(1) } else { Letter::neg(1) };
            return Word { rank, letters: vec![l; n.div_ceil(2) as usize] };
        }
        loop {
            let c = words_of_length(rank, len);
            if rest < c {
                break;
            }
            rest -= c;
            len += 1;
        }
        let branch = 2 * rank as u64 - 1;
        let mut digits = vec![0u64; len as usize];
        if branch > 1 {
            for d in digits.iter_mut().skip(1).rev() {
                *d = rest % branch;
                rest /= branch;
            }
        }
        if let Some(first) = digits.first_mut() {
            *first = rest;
        }
        let mut letters = Vec::with_capacity(len as usize);
        let mut prev: Option<Letter> = None;
        for digit in digits {
            let pos = match prev {
                None => digit,
                Some(q) => {
                    let forbidden = q.inverse().alphabet_pos(rank) as u64;
                    if digit < forbidden {
                        digit
                    } else {
                        digit + 1
                    }
                }
            };
            let l = Letter::from_alphabet_pos(pos as usize, rank);
            letters.push(l);
            prev = Some(l);
        }
        Word { rank, letters }
    }

    pub fn parse(rank: usize, text: &str) -> Result<Word> {
        Alphabet::standard(rank).parse(text)
    }
}

fn checked_pow(base: u64, exp: u32) -> u64 {
    base.checked_pow(exp).expect("shortlex index overflows u64")
}

/// Number of reduced words of length exactly `len`.
pub fn words_of_length(rank: usize, len: u32) -> u64 {
    if len == 0 {
        return 1;
    }
    if rank == 0 {
        return 0;
    }
    let k = rank as u64;
    (2 * k)
        .checked_mul(checked_pow(2 * k - 1, len - 1))
        .expect("shortlex count overflows u64")
}

/// Number of reduced words of length `< len`.
pub fn words_shorter_than(rank: usize, len: u32) -> u64 {
    if rank == 1 {
        return (2 * len as u64).saturating_sub(1);
    }
    (0..len).map(|l| words_of_length(rank, l)).sum()
}

fn push_reduced(letters: &mut Vec<Letter>, l: Letter) {
    if letters.last() == Some(&l.inverse()) {
        letters.pop();
    } else {
        letters.push(l);
    }
}

fn free_reduce(raw: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out = Vec::new();
    for l in raw {
        push_reduced(&mut out, l);
    }
    out
}

/// Iterates the reduced words of a rank in shortlex order, starting at index 0.
#[derive(Clone, Debug)]
pub struct Shortlex {
    rank: usize,
    next: u64,
}

impl Shortlex {
    pub fn new(rank: usize) -> Self {
        Shortlex { rank, next: 0 }
    }

    pub fn starting_at(rank: usize, index: u64) -> Self {
        Shortlex { rank, next: index }
    }
}

impl Iterator for Shortlex {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.rank == 0 && self.next > 0 {
            return None;
        }
        let w = Word::from_shortlex(self.rank, self.next);
        self.next += 1;
        Some(w)
    }
}

/// Cantor's pairing `⟨n, m⟩ = (n+m)(n+m+1)/2 + m`.
pub fn cantor_pair(n: u64, m: u64) -> u64 {
    let s = n + m;
    s * (s + 1) / 2 + m
}

/// Inverse of [`cantor_pair`].
pub fn cantor_unpair(z: u64) -> (u64, u64) {
    let mut w = ((8.0 * z as f64 + 1.0).sqrt() as u64).saturating_sub(1) / 2;
    // correct the floating estimate
    while (w + 1) * (w + 2) / 2 <= z {
        w += 1;
    }
    while w * (w + 1) / 2 > z {
        w -= 1;
    }
    let t = w * (w + 1) / 2;
    let m = z - t;
    (w - m, m)
}

/// Decodes `code` into `j` naturals by iterated unpairing.
pub fn unpair_tuple(code: u64, j: usize) -> Vec<u64> {
    match j {
        0 => Vec::new(),
        1 => vec![code],
        _ => {
            let (head, rest) = cantor_unpair(code);
            let mut out = vec![head];
            out.extend(unpair_tuple(rest, j - 1));
            out
        }
    }
}

/// Inverse of [`unpair_tuple`].
pub fn pair_tuple(values: &[u64]) -> u64 {
    match values {
        [] => 0,
        [v] => *v,
        [head, rest @ ..] => cantor_pair(*head, pair_tuple(rest)),
    }
}

/// The element numbering `n ↦ s_{α̃₁} ⋯ s_{α̃ₘ}`: factor `n = p₀^{α₀}⋯p_m^{α_m}`,
/// reduce each `α_i` with `i ≥ 1` modulo `2k`, and read residue `j` as
/// `s_{j+1}` when `j < k` and `s_{j-k+1}⁻¹` otherwise. The exponent of
/// `p₀ = 2` does not contribute.
pub fn prime_decode(n: u64, rank: usize) -> Result<Word> {
    if n == 0 {
        return Err(Error::Malformed("0 has no prime decomposition".into()));
    }
    if rank == 0 {
        return Ok(Word::identity(0));
    }
    let exponents = prime_exponents(n);
    let modulus = 2 * rank as u64;
    let letters: Vec<Letter> = exponents
        .iter()
        .skip(1)
        .map(|&a| Letter::from_alphabet_pos((a % modulus) as usize, rank))
        .collect();
    Word::reduce(&letters, rank)
}

/// Exponents `α₀, α₁, …, α_m` of `n` over consecutive primes, up to its
/// largest prime factor.
fn prime_exponents(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while n > 1 {
        if p.saturating_mul(p) > n {
            // n itself is prime; fill exponents up to it
            while p < n {
                if is_prime(p) {
                    out.push(0);
                }
                p += 1;
            }
            out.push(1);
            break;
        }
        if is_prime(p) {
            let mut a = 0;
            while n.is_multiple_of(p) {
                n /= p;
                a += 1;
            }
            out.push(a);
        }
        p += 1;
    }
    out
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Letter names used for parsing and printing words. Lowercase names are
/// generators, uppercase their inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<char>,
    rank: usize,
}

const STANDARD: &str = "abcdefghijklmnopqrstuvwxyz";

impl Alphabet {
    pub fn standard(rank: usize) -> Self {
        // ranks above 26 leave the remaining generators nameless (`<n>` syntax)
        Alphabet { names: STANDARD.chars().take(rank).collect(), rank }
    }

    pub fn new(names: Vec<char>) -> Result<Self> {
        for (i, c) in names.iter().enumerate() {
            if !c.is_ascii_lowercase() {
                return Err(Error::Malformed(format!("generator name {c:?} must be a lowercase letter")));
            }
            if names[..i].contains(c) {
                return Err(Error::Malformed(format!("generator name {c:?} repeated")));
            }
        }
        let rank = names.len();
        Ok(Alphabet { names, rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn names(&self) -> &[char] {
        &self.names
    }

    fn lookup(&self, c: char) -> Option<Letter> {
        let lower = c.to_ascii_lowercase();
        let i = self.names.iter().position(|&n| n == lower)?;
        Some(Letter::new(i + 1, c.is_ascii_uppercase()))
    }

    pub fn format(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut s = String::new();
        for l in w.letters() {
            match self.names.get(l.generator() - 1) {
                Some(&c) if l.is_inverse() => s.push(c.to_ascii_uppercase()),
                Some(&c) => s.push(c),
                None => s.push_str(&format!("<{}>", l.signed())),
            }
        }
        s
    }

    /// Parses the ASCII word syntax: letters, `1`, parentheses, powers
    /// `x^3` / `x^-2`, conjugation `x^y = y⁻¹xy`, commutators `[x,y] = x⁻¹y⁻¹xy`
    /// (left-normed for more entries) and `<n>` / `<-n>` for raw indices.
    pub fn parse(&self, text: &str) -> Result<Word> {
        let mut p = WordParser { alphabet: self, chars: text.chars().collect(), pos: 0 };
        let letters = p.expr()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.error("unexpected character"));
        }
        Word::reduce(&letters, self.rank)
    }
}

fn max_generator(letters: &[Letter]) -> usize {
    letters.iter().map(|l| l.generator()).max().unwrap_or(0)
}

struct WordParser<'a> {
    alphabet: &'a Alphabet,
    chars: Vec<char>,
    pos: usize,
}

impl WordParser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && (self.chars[self.pos].is_whitespace() || self.chars[self.pos] == '*') {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Vec<Letter>> {
        let mut out = Vec::new();
        while let Some(c) = self.peek() {
            if c == ')' || c == ']' || c == ',' {
                break;
            }
            out.extend(self.term()?);
        }
        Ok(free_reduce(out))
    }

    fn term(&mut self) -> Result<Vec<Letter>> {
        let mut base = self.atom()?;
        while self.peek() == Some('^') {
            self.pos += 1;
            match self.peek() {
                Some(c) if c.is_ascii_digit() || c == '-' => {
                    let e = self.integer()?;
                    base = power(&base, e);
                }
                Some(_) => {
                    let g = self.atom()?;
                    let mut conj = inverse(&g);
                    conj.extend(base);
                    conj.extend(g);
                    base = free_reduce(conj);
                }
                None => return Err(self.error("missing exponent")),
            }
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        let neg = self.peek() == Some('-');
        if neg {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return Err(self.error("expected integer"));
        }
        let s: String = self.chars[digits_start..self.pos].iter().collect();
        let v: i64 = s.parse().map_err(|_| self.error("integer too large"))?;
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<Vec<Letter>> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some('[') => {
                self.pos += 1;
                let mut acc = self.expr()?;
                let mut entries = 1;
                while self.peek() == Some(',') {
                    self.pos += 1;
                    let next = self.expr()?;
                    acc = commutator(&acc, &next);
                    entries += 1;
                }
                if entries < 2 {
                    return Err(self.error("commutator needs at least two entries"));
                }
                self.expect(']')?;
                Ok(acc)
            }
            Some('1') => {
                self.pos += 1;
                Ok(Vec::new())
            }
            Some('<') => {
                self.pos += 1;
                let v = self.integer()?;
                self.expect('>')?;
                let l = i32::try_from(v)
                    .ok()
                    .and_then(Letter::from_signed)
                    .ok_or_else(|| self.error("bad generator index"))?;
                if l.generator() > self.alphabet.rank() {
                    return Err(self.error("generator index out of range"));
                }
                Ok(vec![l])
            }
            Some(c) if c.is_ascii_alphabetic() => match self.alphabet.lookup(c) {
                Some(l) => {
                    self.pos += 1;
                    Ok(vec![l])
                }
                None => Err(self.error(&format!("unknown generator {c:?}"))),
            },
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected {c:?}")))
        }
    }
}

fn inverse(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| l.inverse()).collect()
}

fn power(w: &[Letter], e: i64) -> Vec<Letter> {
    let base = if e < 0 { inverse(w) } else { w.to_vec() };
    let mut out = Vec::new();
    for _ in 0..e.unsigned_abs() {
        out.extend_from_slice(&base);
    }
    free_reduce(out)
}

fn commutator(x: &[Letter], y: &[Letter]) -> Vec<Letter> {
    let mut out = inverse(x);
    out.extend(inverse(y));
    out.extend_from_slice(x);
    out.extend_from_slice(y);
    free_reduce(out)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Alphabet::standard(self.rank.min(26)).format(self))
    }
}

/// Serialized as the word's text, with `@rank` appended when the rank is
/// larger than the highest generator that occurs (`"ab"`, `"ab@3"`, `"@2"`).
impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if max_generator(&self.letters) == self.rank {
            s.serialize_str(&self.to_string())
        } else {
            s.serialize_str(&format!("{self}@{}", self.rank))
        }
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let (text, rank) = match s.rsplit_once('@') {
            Some((text, r)) => (text, Some(r.parse::<usize>().map_err(serde::de::Error::custom)?)),
            None => (s.as_str(), None),
        };
        let w = Alphabet::standard(26).parse(text).map_err(serde::de::Error::custom)?;
        let rank = rank.unwrap_or_else(|| max_generator(w.letters()));
        w.with_rank(rank).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(rank: usize, s: &str) -> Word {
        Word::parse(rank, s).unwrap()
    }

    /// Cancels adjacent inverse pairs by repeated full scans until nothing
    /// changes.
    fn fixpoint_reduce(raw: &[Letter]) -> Vec<Letter> {
        let mut cur = raw.to_vec();
        loop {
            let mut changed = false;
            let mut i = 0;
            while i + 1 < cur.len() {
                if cur[i] == cur[i + 1].inverse() {
                    cur.drain(i..i + 2);
                    changed = true;
                } else {
                    i += 1;
                }
            }
            if !changed {
                return cur;
            }
        }
    }

    #[test]
    fn reduce_examples() {
        let a = Letter::pos(1);
        let b = Letter::pos(2);
        assert!(Word::reduce(&[a, a.inverse()], 1).unwrap().is_empty());
        assert_eq!(Word::reduce(&[a, b, b.inverse(), a], 2).unwrap(), w(2, "aa"));
        let raw = [a, b.inverse(), b, a.inverse(), a];
        assert_eq!(fixpoint_reduce(&raw), vec![a]);
        assert_eq!(Word::reduce(&raw, 2).unwrap().letters(), &[a]);
        assert!(matches!(Word::reduce(&[Letter::pos(3)], 2), Err(Error::Malformed(_))));
    }

    #[test]
    fn shortlex_examples() {
        assert_eq!(Word::from_shortlex(1, 3), w(1, "a^2"));
        assert_eq!(Word::from_shortlex(1, 5), w(1, "a^3"));
        assert_eq!(Word::from_shortlex(2, 2), w(2, "b"));
        assert_eq!(w(2, "aa").shortlex_index(), 5);
        assert!(Word::from_shortlex(1, 0).is_empty());
        assert!(Word::from_shortlex(2, 0).is_empty());
        // rank 1 pattern: index(a^m) = 2m-1, index(a^-m) = 2m
        for m in 1..40 {
            assert_eq!(Word::generator(1, 1).pow(m).shortlex_index(), 2 * m as u64 - 1);
            assert_eq!(Word::generator(1, 1).pow(-m).shortlex_index(), 2 * m as u64);
        }
    }

    /// Brute-force list of reduced words up to a length, sorted by
    /// (length, alphabet positions).
    fn brute_shortlex(rank: usize, max_len: usize) -> Vec<Vec<usize>> {
        let mut all: Vec<Vec<usize>> = vec![vec![]];
        let mut layer: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for word in &layer {
                for p in 0..2 * rank {
                    if let Some(&q) = word.last() {
                        let inv = if q < rank { q + rank } else { q - rank };
                        if inv == p {
                            continue;
                        }
                    }
                    let mut v = word.clone();
                    v.push(p);
                    next.push(v);
                }
            }
            next.sort();
            all.extend(next.iter().cloned());
            layer = next;
        }
        all
    }

    #[test]
    fn shortlex_matches_brute_enumeration() {
        for rank in 1..=3 {
            for (i, positions) in brute_shortlex(rank, 4).iter().enumerate() {
                let word = Word::from_shortlex(rank, i as u64);
                let got: Vec<usize> = word.letters().iter().map(|l| l.alphabet_pos(rank)).collect();
                assert_eq!(&got, positions, "rank {rank} index {i}");
            }
        }
    }

    #[test]
    fn shortlex_round_trip_and_length_order() {
        for rank in 1..=4 {
            let mut prev_len = 0;
            for n in 0..10_000u64 {
                let word = Word::from_shortlex(rank, n);
                assert_eq!(word.shortlex_index(), n);
                assert!(word.len() >= prev_len);
                prev_len = word.len();
            }
        }
    }

    #[test]
    fn cantor_examples() {
        assert_eq!(cantor_pair(0, 0), 0);
        assert_eq!(cantor_pair(1, 2), 8);
        assert_eq!(cantor_unpair(8), (1, 2));
        let mut seen = std::collections::HashSet::new();
        for n in 0..=500 {
            for m in 0..=500 {
                let z = cantor_pair(n, m);
                assert!(seen.insert(z));
                assert_eq!(cantor_unpair(z), (n, m));
            }
        }
        assert_eq!(unpair_tuple(pair_tuple(&[3, 1, 4]), 3), vec![3, 1, 4]);
    }

    #[test]
    fn prime_decode_examples() {
        assert!(prime_decode(1, 1).unwrap().is_empty());
        assert_eq!(prime_decode(3, 1).unwrap(), w(1, "A"));
        assert_eq!(prime_decode(9, 1).unwrap(), w(1, "a"));
        assert!(prime_decode(0, 1).is_err());
        // p0 exponent is ignored
        assert_eq!(prime_decode(2 * 9, 1).unwrap(), prime_decode(9, 1).unwrap());
        // 5 = p0^0 p1^0 p2^1: residues (0, 1) -> a A -> empty in rank 1
        assert!(prime_decode(5, 1).unwrap().is_empty());
        // rank 2: 7 = p3^1 -> residues (0,0,1) -> a a b
        assert_eq!(prime_decode(7, 2).unwrap(), w(2, "aab"));
    }

    #[test]
    fn parse_syntax() {
        assert_eq!(w(2, "[a,b]"), w(2, "ABab"));
        assert_eq!(w(2, "a^b"), w(2, "Bab"));
        assert_eq!(w(2, "(ab)^-2"), w(2, "BABA"));
        assert_eq!(w(2, "[[a,b],a]"), w(2, "[a,b,a]"));
        assert!(w(1, "1").is_empty());
        assert!(matches!(Word::parse(1, "ab"), Err(Error::Parse { .. })));
        assert_eq!(w(2, "aB").to_string(), "aB");
        assert_eq!(Word::identity(3).to_string(), "1");
    }
}
