//! Finite presentations and Todd–Coxeter coset enumeration.
//!
//! Grammar: `⟨ gens | relators ⟩` where the angle brackets (or ASCII `<`
//! `>`) are optional, generators are identifiers, and each relator is a word
//! built from identifiers, `*`, `^` with a signed integer exponent, and
//! parentheses. `u = v` is stored as the relator `u * (v)^-1`. The literal
//! `1` denotes the empty word.
//!
//! Enumeration is always over the trivial subgroup, so the coset table is
//! the regular action of the group.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Perm;

pub const DEFAULT_MAX_COSETS: usize = 1 << 16;

/// Reduced word: adjacent letters have distinct generators, exponents are nonzero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<(usize, i64)>,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn generator(index: usize) -> Word {
        Word {
            letters: vec![(index, 1)],
        }
    }

    pub fn from_letters(letters: impl IntoIterator<Item = (usize, i64)>) -> Word {
        let mut w = Word::empty();
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn push(&mut self, gen: usize, exp: i64) {
        if exp == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.0 == gen {
                last.1 += exp;
                if last.1 == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push((gen, exp));
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &other.letters {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn pow(&self, exp: i64) -> Word {
        let base = if exp < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut w = Word::empty();
        for _ in 0..exp.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// Evaluate with `images[i]` substituted for generator `i`.
    pub fn evaluate(&self, images: &[Perm], degree: usize) -> Perm {
        let mut acc = Perm::identity(degree);
        for &(g, e) in &self.letters {
            acc = acc.then(&images[g].pow(e));
        }
        acc
    }

    fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.0).max()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Presentation> {
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::Input(format!("`{n}` is not a valid generator name")));
            }
            if names[..i].contains(n) {
                return Err(Error::Input(format!("generator `{n}` declared twice")));
            }
        }
        if let Some(max) = relators.iter().filter_map(Word::max_generator).max() {
            if max >= names.len() {
                return Err(Error::Input(format!("relator uses generator index {max}")));
            }
        }
        Ok(Presentation { names, relators })
    }

    /// Generator list plus relator strings, as in the group JSON format.
    pub fn from_parts(names: &[String], relators: &[String]) -> Result<Presentation> {
        let relators = relators
            .iter()
            .map(|r| parse_relation(r, names))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(names.to_vec(), relators)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} | ", self.names.join(","))?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if r.is_empty() {
                f.write_str("1")?;
            }
            for (j, &(g, e)) in r.letters().iter().enumerate() {
                if j > 0 {
                    f.write_str("*")?;
                }
                f.write_str(&self.names[g])?;
                if e != 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        f.write_str(">")
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Star,
    Caret,
    Minus,
    Plus,
    LParen,
    RParen,
    Comma,
    Bar,
    Eq,
    LAngle,
    RAngle,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let mut s = String::new();
                while let Some(&(_, d)) = chars.get(i) {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        i += 1;
                    } else {
                        break;
                    }
                }
                out.push((pos, Tok::Ident(s)));
                continue;
            }
            c if c.is_ascii_digit() => {
                let mut v: i64 = 0;
                while let Some(&(_, d)) = chars.get(i) {
                    let Some(dig) = d.to_digit(10) else { break };
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(dig as i64))
                        .ok_or_else(|| Error::parse(pos, "integer too large"))?;
                    i += 1;
                }
                out.push((pos, Tok::Int(v)));
                continue;
            }
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '-' => Tok::Minus,
            '+' => Tok::Plus,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '|' => Tok::Bar,
            '=' => Tok::Eq,
            '<' | '⟨' => Tok::LAngle,
            '>' | '⟩' => Tok::RAngle,
            other => return Err(Error::parse(pos, format!("unexpected character `{other}`"))),
        };
        out.push((pos, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.0)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn relation(&mut self) -> Result<Word> {
        let lhs = self.word()?;
        if self.eat(&Tok::Eq) {
            let rhs = self.word()?;
            Ok(lhs.concat(&rhs.inverse()))
        } else {
            Ok(lhs)
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut w = self.factor()?;
        while self.eat(&Tok::Star) {
            w = w.concat(&self.factor()?);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word> {
        let pos = self.pos();
        let mut base = match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.i += 1;
                let idx = self
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or(Error::UnknownGenerator(name))?;
                Word::generator(idx)
            }
            Some(Tok::Int(1)) => {
                self.i += 1;
                Word::empty()
            }
            Some(Tok::LParen) => {
                self.i += 1;
                let w = self.word()?;
                if !self.eat(&Tok::RParen) {
                    return Err(Error::parse(self.pos(), "expected `)`"));
                }
                w
            }
            _ => return Err(Error::parse(pos, "expected a generator, `1`, or `(`")),
        };
        while self.eat(&Tok::Caret) {
            let sign = if self.eat(&Tok::Minus) {
                -1
            } else {
                self.eat(&Tok::Plus);
                1
            };
            let pos = self.pos();
            match self.peek() {
                Some(&Tok::Int(v)) => {
                    self.i += 1;
                    base = base.pow(sign * v);
                }
                _ => return Err(Error::parse(pos, "expected an integer exponent")),
            }
        }
        Ok(base)
    }
}

/// Parse a full presentation such as `⟨r,s | r^8, s^2, s^-1*r*s*r⟩`.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        i: 0,
        end: text.len(),
        names: &[],
    };
    let angled = p.eat(&Tok::LAngle);
    let mut names = Vec::new();
    loop {
        let pos = p.pos();
        match p.peek().cloned() {
            Some(Tok::Ident(n)) => {
                p.i += 1;
                if names.contains(&n) {
                    return Err(Error::parse(pos, format!("generator `{n}` declared twice")));
                }
                names.push(n);
            }
            _ => return Err(Error::parse(pos, "expected a generator name")),
        }
        if !p.eat(&Tok::Comma) {
            break;
        }
    }
    let mut relators = Vec::new();
    if p.eat(&Tok::Bar) {
        let toks = std::mem::take(&mut p.toks);
        let mut q = Parser {
            toks,
            i: p.i,
            end: p.end,
            names: &names,
        };
        let closes = |q: &Parser| matches!(q.peek(), None | Some(Tok::RAngle));
        if !closes(&q) {
            loop {
                relators.push(q.relation()?);
                if !q.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        p.toks = q.toks;
        p.i = q.i;
    }
    if angled && !p.eat(&Tok::RAngle) {
        return Err(Error::parse(p.pos(), "expected `>`"));
    }
    if p.i != p.toks.len() {
        return Err(Error::parse(p.pos(), "trailing input"));
    }
    Presentation::new(names, relators)
}

/// Parse a word or relation over known generator names.
pub fn parse_relation(text: &str, names: &[String]) -> Result<Word> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        i: 0,
        end: text.len(),
        names,
    };
    let w = p.relation()?;
    if p.i != p.toks.len() {
        return Err(Error::parse(p.pos(), "trailing input"));
    }
    Ok(w)
}

/// A closed coset table: `action[g][c]` is coset `c` times generator `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    action: Vec<Vec<u32>>,
    inverse: Vec<Vec<u32>>,
}

impl CosetTable {
    pub fn num_cosets(&self) -> usize {
        self.action.first().map_or(1, Vec::len)
    }

    pub fn num_generators(&self) -> usize {
        self.action.len()
    }

    /// 0-based image of coset `c` under generator `g`.
    pub fn act(&self, g: usize, c: usize) -> usize {
        self.action[g][c] as usize
    }

    pub fn act_inverse(&self, g: usize, c: usize) -> usize {
        self.inverse[g][c] as usize
    }
}

const UNDEF: u32 = u32::MAX;
/// Total definitions (live or dead) allowed per unit of the live cap.
const STORAGE_FACTOR: usize = 16;

struct Enumerator {
    ncols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    len: usize,
    live: usize,
    max_cosets: usize,
    queue: Vec<u32>,
}

impl Enumerator {
    #[inline]
    fn get(&self, c: usize, col: usize) -> u32 {
        self.table[c * self.ncols + col]
    }

    #[inline]
    fn set(&mut self, c: usize, col: usize, v: u32) {
        self.table[c * self.ncols + col] = v;
    }

    #[inline]
    fn inv(col: usize) -> usize {
        col ^ 1
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn define(&mut self, c: usize, col: usize) -> Result<()> {
        if self.live >= self.max_cosets || self.len >= STORAGE_FACTOR * self.max_cosets {
            return Err(Error::CapExceeded {
                what: "coset enumeration",
                cap: self.max_cosets,
            });
        }
        let d = self.len;
        self.len += 1;
        self.live += 1;
        self.table.extend(std::iter::repeat_n(UNDEF, self.ncols));
        self.parent.push(d as u32);
        self.set(c, col, d as u32);
        self.set(d, Self::inv(col), c as u32);
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut cur = c;
        while self.parent[cur] as usize != root {
            let next = self.parent[cur] as usize;
            self.parent[cur] = root as u32;
            cur = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra == rb {
            return;
        }
        let (keep, drop) = (ra.min(rb), ra.max(rb));
        self.parent[drop] = keep as u32;
        self.live -= 1;
        self.queue.push(drop as u32);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let gamma = self.queue[i] as usize;
            i += 1;
            for col in 0..self.ncols {
                let delta = self.get(gamma, col);
                if delta == UNDEF {
                    continue;
                }
                let delta = delta as usize;
                if self.get(delta, Self::inv(col)) as usize == gamma {
                    self.set(delta, Self::inv(col), UNDEF);
                }
                let mu = self.rep(gamma);
                let nu = self.rep(delta);
                let mu_col = self.get(mu, col);
                if mu_col != UNDEF {
                    self.merge(nu, mu_col as usize);
                } else {
                    let nu_inv = self.get(nu, Self::inv(col));
                    if nu_inv != UNDEF {
                        self.merge(mu, nu_inv as usize);
                    } else {
                        self.set(mu, col, nu as u32);
                        self.set(nu, Self::inv(col), mu as u32);
                    }
                }
            }
        }
    }

    /// Scan `word` (as table columns) at coset `alpha`, defining new cosets
    /// until the scan completes.
    fn scan_and_fill(&mut self, alpha: usize, word: &[usize]) -> Result<()> {
        if word.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (alpha, alpha);
        let mut i = 0isize;
        let mut j = word.len() as isize - 1;
        loop {
            while i <= j && self.get(f, word[i as usize]) != UNDEF {
                f = self.get(f, word[i as usize]) as usize;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.get(b, Self::inv(word[j as usize])) != UNDEF {
                b = self.get(b, Self::inv(word[j as usize])) as usize;
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let col = word[i as usize];
                self.set(f, col, b as u32);
                self.set(b, Self::inv(col), f as u32);
                return Ok(());
            }
            self.define(f, word[i as usize])?;
        }
    }

    /// Scan without defining: record deductions and coincidences only.
    fn scan(&mut self, alpha: usize, word: &[usize]) {
        let (mut f, mut b) = (alpha, alpha);
        let mut i = 0isize;
        let mut j = word.len() as isize - 1;
        while i <= j && self.get(f, word[i as usize]) != UNDEF {
            f = self.get(f, word[i as usize]) as usize;
            i += 1;
        }
        if i > j {
            if f != b {
                self.coincidence(f, b);
            }
            return;
        }
        while j >= i && self.get(b, Self::inv(word[j as usize])) != UNDEF {
            b = self.get(b, Self::inv(word[j as usize])) as usize;
            j -= 1;
        }
        if j < i {
            self.coincidence(f, b);
        } else if i == j {
            let col = word[i as usize];
            self.set(f, col, b as u32);
            self.set(b, Self::inv(col), f as u32);
        }
    }

    /// Scan every relator at every live coset, then compact the table.
    /// Returns the new position of coset `alpha`.
    fn lookahead(&mut self, relators: &[Vec<usize>], alpha: usize) -> usize {
        for c in 0..self.len {
            for rel in relators {
                if !self.is_live(c) {
                    break;
                }
                self.scan(c, rel);
            }
        }
        let mut index = vec![UNDEF; self.len];
        let mut count = 0usize;
        for (c, slot) in index.iter_mut().enumerate() {
            if self.parent[c] as usize == c {
                *slot = count as u32;
                count += 1;
            }
        }
        let new_alpha = index[..alpha.min(self.len)]
            .iter()
            .filter(|&&i| i != UNDEF)
            .count();
        let mut table = Vec::with_capacity(count * self.ncols);
        for c in 0..self.len {
            if index[c] == UNDEF {
                continue;
            }
            for col in 0..self.ncols {
                let v = self.get(c, col);
                table.push(if v == UNDEF {
                    UNDEF
                } else {
                    index[self.rep(v as usize)]
                });
            }
        }
        self.table = table;
        self.parent = (0..count as u32).collect();
        self.len = count;
        self.live = count;
        new_alpha
    }
}

fn fill_coset(en: &mut Enumerator, relators: &[Vec<usize>], alpha: usize) -> Result<()> {
    if !en.is_live(alpha) {
        return Ok(());
    }
    for rel in relators {
        en.scan_and_fill(alpha, rel)?;
        if !en.is_live(alpha) {
            return Ok(());
        }
    }
    for col in 0..en.ncols {
        if en.get(alpha, col) == UNDEF {
            en.define(alpha, col)?;
        }
    }
    Ok(())
}

/// HLT coset enumeration over the trivial subgroup, with a lookahead pass
/// whenever the table fills.
pub fn todd_coxeter(pres: &Presentation, max_cosets: usize) -> Result<CosetTable> {
    let ngens = pres.names().len();
    let ncols = 2 * ngens;
    let mut relators: Vec<Vec<usize>> = pres
        .relators()
        .iter()
        .map(|w| {
            w.letters()
                .iter()
                .flat_map(|&(g, e)| {
                    let col = if e > 0 { 2 * g } else { 2 * g + 1 };
                    std::iter::repeat_n(col, e.unsigned_abs() as usize)
                })
                .collect()
        })
        .collect();
    // Short relators first: long power relators otherwise flood the table.
    relators.sort_by_key(Vec::len);

    let mut en = Enumerator {
        ncols,
        table: vec![UNDEF; ncols],
        parent: vec![0],
        len: 1,
        live: 1,
        max_cosets: max_cosets.max(1),
        queue: Vec::new(),
    };

    let mut alpha = 0;
    while alpha < en.len {
        match fill_coset(&mut en, &relators, alpha) {
            Ok(()) => alpha += 1,
            Err(e @ Error::CapExceeded { .. }) => {
                alpha = en.lookahead(&relators, alpha);
                if en.live >= en.max_cosets {
                    return Err(e);
                }
            }
            Err(e) => return Err(e),
        }
    }

    // Renumber live cosets in order.
    let mut index = vec![UNDEF; en.len];
    let mut count = 0u32;
    for (c, slot) in index.iter_mut().enumerate() {
        if en.is_live(c) {
            *slot = count;
            count += 1;
        }
    }
    let n = count as usize;
    let mut action = vec![vec![0u32; n]; ngens];
    let mut inverse = vec![vec![0u32; n]; ngens];
    for c in 0..en.len {
        if !en.is_live(c) {
            continue;
        }
        let ci = index[c] as usize;
        for g in 0..ngens {
            let fwd = en.get(c, 2 * g);
            let bwd = en.get(c, 2 * g + 1);
            debug_assert!(fwd != UNDEF && bwd != UNDEF);
            action[g][ci] = index[en.rep(fwd as usize)];
            inverse[g][ci] = index[en.rep(bwd as usize)];
        }
    }
    Ok(CosetTable { action, inverse })
}

/// One permutation of the cosets per generator.
pub fn coset_realization(table: &CosetTable) -> Vec<Perm> {
    table
        .action
        .iter()
        .map(|row| Perm::from_raw(row.clone()))
        .collect()
}
