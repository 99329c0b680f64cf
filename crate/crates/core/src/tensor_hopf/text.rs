//! Text and JSON forms of tensor elements.
//!
//! ```text
//! element := term (('+' | '-') term)*
//! term    := '-'? scalar? ('*'? '{' word '}')?
//! word    := label ('*' label)* | empty
//! ```
//!
//! Rendering produces e.g. `2{dX*dX} + {dT}` or `-2 s+ s- {dT*dT}`, and
//! parsing accepts everything rendering produces.

use std::fmt;
use std::sync::Arc;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{TensorElement, Word};
use crate::error::Result;
use crate::ito_algebra::ItoAlgebra;
use crate::parse::Cursor;
use crate::scalar::{Scalar, ScalarTermJson};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub word: Vec<String>,
    pub coef: Vec<ScalarTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub terms: Vec<TermJson>,
}

fn render_word(alg: &ItoAlgebra, w: &Word) -> String {
    let names: Vec<&str> = w.letters().iter().map(|&l| alg.label_name(l)).collect();
    format!("{{{}}}", names.join("*"))
}

fn render_term(alg: &ItoAlgebra, w: &Word, c: &Scalar, alone: bool) -> String {
    if w.rank() == 0 {
        return if c.is_compound() && !alone { format!("({c})") } else { c.to_string() };
    }
    let word = render_word(alg, w);
    if c.is_one() {
        return word;
    }
    if (-c).is_one() {
        return format!("-{word}");
    }
    if c.is_compound() {
        return format!("({c}){word}");
    }
    let s = c.to_string();
    if s.ends_with(|ch: char| ch.is_ascii_digit()) {
        format!("{s}{word}")
    } else {
        format!("{s} {word}")
    }
}

impl TensorElement {
    /// Renders the element in the text format.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let alone = self.len() == 1;
        let mut out = String::new();
        for (k, (w, c)) in self.terms().enumerate() {
            let t = render_term(self.algebra(), w, c, alone);
            match (k, t.strip_prefix('-')) {
                (0, _) => out.push_str(&t),
                (_, Some(rest)) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                (_, None) => {
                    out.push_str(" + ");
                    out.push_str(&t);
                }
            }
        }
        out
    }

    /// Parses the text format against the given algebra.
    pub fn parse(algebra: &Arc<ItoAlgebra>, text: &str) -> Result<TensorElement> {
        let mut cur = Cursor::new(text);
        let mut out = TensorElement::zero(algebra);
        if cur.at_end() {
            return cur.err("empty expression");
        }
        let mut first = true;
        loop {
            let neg = if first {
                cur.eat('-')
            } else if cur.eat('+') {
                false
            } else if cur.eat('-') {
                true
            } else {
                break;
            };
            first = false;
            let (w, c) = parse_term(algebra, &mut cur)?;
            out.push_term(w, if neg { -c } else { c });
        }
        cur.expect_end()?;
        Ok(out)
    }

    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            terms: self
                .terms()
                .map(|(w, c)| TermJson {
                    word: w.letters().iter().map(|&l| self.algebra().label_name(l).to_string()).collect(),
                    coef: c.to_json(),
                })
                .collect(),
        }
    }

    pub fn from_json(algebra: &Arc<ItoAlgebra>, j: &ElementJson) -> Result<TensorElement> {
        let mut out = TensorElement::zero(algebra);
        for t in &j.terms {
            let w = t.word.iter().map(|l| algebra.index_of(l)).collect::<Result<Vec<_>>>()?;
            out.push_term(Word(w), Scalar::from_json(&t.coef)?);
        }
        Ok(out)
    }
}

fn parse_term(alg: &ItoAlgebra, cur: &mut Cursor<'_>) -> Result<(Word, Scalar)> {
    let coef = cur.factors()?;
    if cur.peek() == Some('{') {
        cur.bump();
        let mut letters = Vec::new();
        if !cur.eat('}') {
            loop {
                let name = cur.ident()?;
                letters.push(alg.index_of(name)?);
                if cur.eat('}') {
                    break;
                }
                cur.expect('*')?;
            }
        }
        Ok((Word(letters), coef.unwrap_or_else(Scalar::one)))
    } else {
        match coef {
            Some(c) => Ok((Word::empty(), c)),
            None => cur.err("expected a scalar or a `{word}`"),
        }
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
