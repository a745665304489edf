//! Text literals for groups, elements, labels and terms.
//!
//! ```text
//! group    Z4 | Z2xZ2 | 1
//! element  3 | [1,0]            (the trivial group's identity is 0)
//! label    E(1,0,1) | MT(2;1,1)
//! term     x1:1 | ( A o B o C ) | assoc(A,B,C) | pow(A,k) | 2*A - 3/2*B
//! ```

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::grading::GradingLabel;
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::identities::JordanTerm;
use crate::matrix::Scalar;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn parse_group(s: &str) -> Result<FiniteAbelianGroup> {
    let s = s.trim();
    if s == "1" || s.eq_ignore_ascii_case("trivial") {
        return Ok(FiniteAbelianGroup::trivial());
    }
    let moduli = s
        .split(['x', '×'])
        .map(|part| {
            let part = part.trim();
            let digits = part
                .strip_prefix('Z')
                .or_else(|| part.strip_prefix('z'))
                .ok_or_else(|| parse_err(format!("group factor `{part}` must look like Z4")))?;
            digits
                .parse::<u64>()
                .map_err(|_| parse_err(format!("bad modulus in `{part}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteAbelianGroup::new(moduli).map_err(|e| parse_err(e.to_string()))
}

pub fn parse_element(group: &FiniteAbelianGroup, s: &str) -> Result<GroupElement> {
    let s = s.trim();
    let coords: Vec<i64> = if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|c| c.trim().parse::<i64>().map_err(|_| parse_err(format!("bad coordinate `{c}`"))))
                .collect::<Result<_>>()?
        }
    } else {
        let v = s
            .parse::<i64>()
            .map_err(|_| parse_err(format!("bad group element `{s}`")))?;
        if group.rank() == 0 && v == 0 {
            Vec::new()
        } else {
            vec![v]
        }
    };
    group.element(&coords).map_err(|e| parse_err(e.to_string()))
}

/// Splits on commas outside brackets.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..k]);
                start = k + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Comma-separated elements; the empty string is the empty sequence.
pub fn parse_sequence(group: &FiniteAbelianGroup, s: &str) -> Result<Vec<GroupElement>> {
    let s = s.trim();
    let s = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(s);
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top(s, ',')
        .into_iter()
        .map(|p| parse_element(group, p))
        .collect()
}

pub fn format_sequence(eta: &[GroupElement]) -> String {
    eta.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(",")
}

pub fn parse_label(group: &FiniteAbelianGroup, s: &str) -> Result<GradingLabel> {
    let s = s.trim();
    let body = |rest: &str| -> Result<String> {
        rest.trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .map(str::to_string)
            .ok_or_else(|| parse_err(format!("label `{s}` needs parentheses")))
    };
    if let Some(rest) = s.strip_prefix("MT").or_else(|| s.strip_prefix("mt")) {
        let inner = body(rest)?;
        let (t, eta) = inner
            .split_once(';')
            .ok_or_else(|| parse_err(format!("label `{s}` must look like MT(t;g1,...)")))?;
        Ok(GradingLabel::Mt {
            t: parse_element(group, t)?,
            eta: parse_sequence(group, eta)?,
        })
    } else if let Some(rest) = s.strip_prefix('E').or_else(|| s.strip_prefix('e')) {
        Ok(GradingLabel::Elementary(parse_sequence(group, &body(rest)?)?))
    } else {
        Err(parse_err(format!("label `{s}` must start with E or MT")))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(u32),
    Word(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().collect();
            out.push(Tok::Num(digits.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_alphanumeric() {
                k += 1;
            }
            let word: String = chars[start..k].iter().collect();
            match word.strip_prefix('x').map(|d| d.parse::<u32>()) {
                Some(Ok(id)) => out.push(Tok::Var(id)),
                _ => out.push(Tok::Word(word)),
            }
        } else if "()[],:+-*/".contains(c) {
            out.push(Tok::Sym(c));
            k += 1;
        } else {
            return Err(parse_err(format!("unexpected character `{c}` in term")));
        }
    }
    Ok(out)
}

struct TermParser<'a> {
    group: &'a FiniteAbelianGroup,
    toks: Vec<Tok>,
    pos: usize,
}

impl TermParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Result<Tok> {
        let t = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| parse_err("unexpected end of term"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.next()? {
            Tok::Sym(d) if d == c => Ok(()),
            other => Err(parse_err(format!("expected `{c}`, found {other:?}"))),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<JordanTerm> {
        let mut negate = self.eat('-');
        if !negate {
            self.eat('+');
        }
        let mut acc = JordanTerm::zero();
        loop {
            let s = self.summand()?;
            acc = if negate { acc.sub(&s) } else { acc.add(&s) };
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn summand(&mut self) -> Result<JordanTerm> {
        if let Some(Tok::Num(num)) = self.peek().cloned() {
            self.pos += 1;
            let mut c = Scalar::from_integer(num);
            if self.eat('/') {
                match self.next()? {
                    Tok::Num(den) if den != BigInt::from(0) => c /= Scalar::from_integer(den),
                    other => return Err(parse_err(format!("bad denominator {other:?}"))),
                }
            }
            if !self.eat('*') {
                return if c == Scalar::from_integer(0.into()) {
                    Ok(JordanTerm::zero())
                } else {
                    Err(parse_err("a coefficient must be followed by `*`"))
                };
            }
            return Ok(self.atom()?.scale(&c));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<JordanTerm> {
        match self.next()? {
            Tok::Var(id) => {
                self.expect(':')?;
                let degree = self.element()?;
                Ok(JordanTerm::var(id, degree))
            }
            Tok::Sym('(') => {
                let mut factors = vec![self.sum()?];
                while self.peek() == Some(&Tok::Word("o".into())) {
                    self.pos += 1;
                    factors.push(self.sum()?);
                }
                self.expect(')')?;
                Ok(JordanTerm::left_normed(&factors))
            }
            Tok::Word(w) if w == "assoc" => {
                self.expect('(')?;
                let a = self.sum()?;
                self.expect(',')?;
                let b = self.sum()?;
                self.expect(',')?;
                let c = self.sum()?;
                self.expect(')')?;
                Ok(JordanTerm::associator(&a, &b, &c))
            }
            Tok::Word(w) if w == "pow" => {
                self.expect('(')?;
                let a = self.sum()?;
                self.expect(',')?;
                let k = match self.next()? {
                    Tok::Num(k) if k >= BigInt::from(1) && k <= BigInt::from(64) => {
                        usize::try_from(k).expect("small")
                    }
                    other => return Err(parse_err(format!("bad exponent {other:?}"))),
                };
                self.expect(')')?;
                Ok(a.power(k))
            }
            other => Err(parse_err(format!("unexpected {other:?} in term"))),
        }
    }

    fn element(&mut self) -> Result<crate::group::GroupElement> {
        let mut text = String::new();
        if self.eat('[') {
            text.push('[');
            loop {
                match self.next()? {
                    Tok::Num(v) => text.push_str(&v.to_string()),
                    Tok::Sym('-') => text.push('-'),
                    Tok::Sym(',') => text.push(','),
                    Tok::Sym(']') => break,
                    other => return Err(parse_err(format!("unexpected {other:?} in element"))),
                }
            }
            text.push(']');
        } else {
            if self.eat('-') {
                text.push('-');
            }
            match self.next()? {
                Tok::Num(v) => text.push_str(&v.to_string()),
                other => return Err(parse_err(format!("expected a degree, found {other:?}"))),
            }
        }
        parse_element(self.group, &text)
    }
}

pub fn parse_term(group: &FiniteAbelianGroup, s: &str) -> Result<JordanTerm> {
    let mut p = TermParser {
        group,
        toks: tokenize(s)?,
        pos: 0,
    };
    let t = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(parse_err(format!("trailing input after term: {:?}", &p.toks[p.pos..])));
    }
    Ok(t)
}
