//! Text syntax for words: `e12(s^2)`, `e[a+b](x)`, `n[a]`, `t[a+g](t)`,
//! `sigma`, `sigma^2`, `^-1` for inverses, `1` for the empty word. Atoms are
//! separated by `*`, `·`, whitespace or nothing.

use super::{Atom, ChevalleyError, Word};
use crate::coeffring::{Registry, VarKind};
use crate::rootsys::{Cochar, RootSystem};

pub fn render_atom(rs: &RootSystem, reg: &Registry, atom: &Atom) -> String {
    match atom {
        Atom::Root { root, coeff } => format!("e{}({})", rs.label(*root), reg.render(coeff)),
        Atom::Weyl(r) => format!("n[{}]", rs.render_root(*r)),
        Atom::Torus { cochar, unit } => format!(
            "t[{}]({})",
            rs.render_vec(&cochar.0),
            reg.render_monomial(unit)
        ),
        Atom::Graph(1) => "sigma".into(),
        Atom::Graph(k) => format!("sigma^{k}"),
        Atom::Inverse(a) => format!("{}^-1", render_atom(rs, reg, a)),
    }
}

/// Root letters are joined by `*`, everything else by `·`.
pub fn render_word(rs: &RootSystem, reg: &Registry, word: &Word) -> String {
    if word.is_empty() {
        return "1".into();
    }
    let mut out = String::new();
    for (i, atom) in word.atoms().iter().enumerate() {
        if i > 0 {
            let both_roots = matches!(atom, Atom::Root { .. })
                && matches!(word.atoms()[i - 1], Atom::Root { .. });
            out.push_str(if both_roots { "*" } else { "·" });
        }
        out.push_str(&render_atom(rs, reg, atom));
    }
    out
}

struct WordParser<'a> {
    rs: &'a RootSystem,
    reg: &'a mut Registry,
    chars: Vec<char>,
    pos: usize,
}

impl WordParser<'_> {
    fn err(&self, msg: &str) -> ChevalleyError {
        let rest: String = self.chars[self.pos.min(self.chars.len())..]
            .iter()
            .collect();
        ChevalleyError::Parse(format!("{msg} at `{rest}`"))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, s: &str) -> bool {
        let n = s.chars().count();
        if self.chars.len() >= self.pos + n
            && self.chars[self.pos..self.pos + n]
                .iter()
                .copied()
                .eq(s.chars())
        {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn skip_separators(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace() || c == '*' || c == '·' || c == '.')
        {
            self.pos += 1;
        }
    }

    /// Contents up to the bracket matching the one just consumed.
    fn bracketed(&mut self, open: char, close: char) -> Result<String, ChevalleyError> {
        let start = self.pos;
        let mut depth = 1;
        while let Some(c) = self.peek() {
            if c == open {
                depth += 1;
            } else if c == close {
                depth -= 1;
                if depth == 0 {
                    let s: String = self.chars[start..self.pos].iter().collect();
                    self.pos += 1;
                    return Ok(s);
                }
            }
            self.pos += 1;
        }
        Err(self.err(&format!("unclosed `{open}`")))
    }

    fn integer(&mut self) -> Option<i32> {
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        match s.parse() {
            Ok(v) => Some(v),
            Err(_) => {
                self.pos = start;
                None
            }
        }
    }

    fn base(&mut self) -> Result<Atom, ChevalleyError> {
        if self.eat("sigma") || self.eat("σ") {
            return Ok(Atom::Graph(1));
        }
        if self.eat("n[") {
            let inner = self.bracketed('[', ']')?;
            return Ok(Atom::Weyl(self.rs.parse_root(&inner)?));
        }
        if self.eat("t[") {
            let inner = self.bracketed('[', ']')?;
            let cochar: Cochar = self.rs.parse_cochar(&inner)?;
            if !self.eat("(") {
                return Err(self.err("expected `(` after torus cocharacter"));
            }
            let text = self.bracketed('(', ')')?;
            let p = self.reg.parse(&text)?;
            let unit = p
                .as_monomial()
                .filter(|m| {
                    m.exponents()
                        .iter()
                        .all(|&(v, _)| self.reg.kind(v) == VarKind::Unit)
                })
                .cloned()
                .ok_or_else(|| ChevalleyError::NotUnit(text.clone()))?;
            return Ok(Atom::Torus { cochar, unit });
        }
        if self.eat("e") {
            let root = if self.eat("[") {
                let inner = self.bracketed('[', ']')?;
                self.rs.parse_root(&inner)?
            } else {
                let label = self
                    .integer()
                    .ok_or_else(|| self.err("expected root label"))?;
                self.rs.by_label(label)?
            };
            if !self.eat("(") {
                return Err(self.err("expected `(` after root"));
            }
            let text = self.bracketed('(', ')')?;
            let coeff = self.reg.parse(&text)?;
            return Ok(Atom::Root { root, coeff });
        }
        Err(self.err("expected an atom"))
    }

    fn atom(&mut self) -> Result<Atom, ChevalleyError> {
        let mut a = self.base()?;
        while self.eat("^") {
            let k = self
                .integer()
                .ok_or_else(|| self.err("expected exponent"))?;
            a = match (a, k) {
                (a, -1) => Atom::Inverse(Box::new(a)),
                (a, 1) => a,
                (Atom::Graph(1), k) => {
                    let ord = self.rs.sigma_order() as i32;
                    Atom::Graph(k.rem_euclid(ord) as u8)
                }
                _ => return Err(self.err("only sigma takes exponents other than ±1")),
            };
        }
        Ok(a)
    }

    fn word(&mut self) -> Result<Word, ChevalleyError> {
        let mut atoms = Vec::new();
        self.skip_separators();
        if self.peek() == Some('1') {
            self.pos += 1;
            self.skip_separators();
            if self.pos == self.chars.len() {
                return Ok(Word::identity());
            }
            return Err(self.err("`1` must stand alone"));
        }
        while self.pos < self.chars.len() {
            atoms.push(self.atom()?);
            self.skip_separators();
        }
        let ord = self.rs.sigma_order();
        // sigma^0 and identity-order powers vanish.
        atoms.retain(|a| !matches!(a, Atom::Graph(0)));
        if ord == 1 && atoms.iter().any(|a| matches!(a, Atom::Graph(_))) {
            return Err(ChevalleyError::Parse(
                "this system has no diagram automorphism".into(),
            ));
        }
        Ok(Word(atoms))
    }
}

pub fn parse_word(
    rs: &RootSystem,
    reg: &mut Registry,
    input: &str,
) -> Result<Word, ChevalleyError> {
    WordParser {
        rs,
        reg,
        chars: input.chars().collect(),
        pos: 0,
    }
    .word()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Dynkin;

    #[test]
    fn round_trip() {
        let rs = RootSystem::new(Dynkin::D4).unwrap();
        let mut reg = Registry::standard();
        for text in [
            "n[a]·sigma·e12(s^2)",
            "e6(s)*e9(s)",
            "e-12(1)*e-2(s)",
            "t[a+g](t)·e4(x4 + x7)",
            "sigma^2·n[a+2b+g+d]^-1",
            "1",
        ] {
            let w = parse_word(&rs, &mut reg, text).unwrap();
            assert_eq!(render_word(&rs, &reg, &w), text);
        }
    }

    #[test]
    fn alternative_spellings() {
        let rs = RootSystem::new(Dynkin::D4).unwrap();
        let mut reg = Registry::standard();
        let a = parse_word(&rs, &mut reg, "n[α] σ e[a+2b+g+d](a)").unwrap();
        let b = parse_word(&rs, &mut reg, "n[1]*sigma*e12(s^2)").unwrap();
        assert_eq!(a, b);
        assert_eq!(
            parse_word(&rs, &mut reg, "sigma^-1").unwrap(),
            Word(vec![Atom::Inverse(Box::new(Atom::Graph(1)))])
        );
        assert_eq!(
            parse_word(&rs, &mut reg, "sigma^3").unwrap(),
            Word::identity()
        );
    }

    #[test]
    fn errors() {
        let rs = RootSystem::new(Dynkin::A(2)).unwrap();
        let mut reg = Registry::standard();
        assert!(parse_word(&rs, &mut reg, "e4(x)").is_err());
        assert!(parse_word(&rs, &mut reg, "e1(x").is_err());
        assert!(matches!(
            parse_word(&rs, &mut reg, "t[a](x)"),
            Err(ChevalleyError::NotUnit(_))
        ));
        assert!(parse_word(&rs, &mut reg, "q").is_err());
    }
}
