use super::Formula;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    V,
    Not,
    Arrow,
    Tri,
    Plus,
    Dot,
    LParen,
    RParen,
    Zero,
    One,
    End,
}

impl Tok {
    fn describe(self) -> &'static str {
        match self {
            Tok::V => "'v'",
            Tok::Not => "'!'",
            Tok::Arrow => "'->'",
            Tok::Tri => "'<|'",
            Tok::Plus => "'+'",
            Tok::Dot => "'.'",
            Tok::LParen => "'('",
            Tok::RParen => "')'",
            Tok::Zero => "'0'",
            Tok::One => "'1'",
            Tok::End => "end of input",
        }
    }
}

/// Tokens with their character offsets.
fn lex(text: &str, constants: bool) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let next = chars.get(k + 1).copied();
        let (tok, width) = match c {
            c if c.is_whitespace() => {
                k += 1;
                continue;
            }
            'v' => (Tok::V, 1),
            '!' | '¬' | '~' => (Tok::Not, 1),
            '→' => (Tok::Arrow, 1),
            '-' if next == Some('>') => (Tok::Arrow, 2),
            '◄' | '◀' => (Tok::Tri, 1),
            '<' if next == Some('|') => (Tok::Tri, 2),
            '+' | '⊕' => (Tok::Plus, 1),
            '.' | '⊙' => (Tok::Dot, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '0' if constants => (Tok::Zero, 1),
            '1' if constants => (Tok::One, 1),
            other => {
                return Err(Error::Parse {
                    position: k,
                    message: format!("unexpected character {other:?}"),
                })
            }
        };
        out.push((tok, k));
        k += width;
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Tok {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.peek();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T> {
        let (tok, position) = self.toks[self.pos];
        Err(Error::Parse {
            position,
            message: format!("expected {expected}, found {}", tok.describe()),
        })
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.sum()?;
        if self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn sum(&mut self) -> Result<Formula> {
        let mut lhs = self.substitution()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Formula::oplus(lhs, self.substitution()?);
                }
                Tok::Dot => {
                    self.bump();
                    lhs = Formula::odot(lhs, self.substitution()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn substitution(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.peek() == Tok::Tri {
            self.bump();
            lhs = Formula::subst(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::V => {
                self.bump();
                Ok(Formula::Var)
            }
            Tok::One => {
                self.bump();
                Ok(Formula::imp(Formula::Var, Formula::Var))
            }
            Tok::Zero => {
                self.bump();
                Ok(Formula::not(Formula::imp(Formula::Var, Formula::Var)))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.implication()?;
                if self.peek() != Tok::RParen {
                    return self.error("')'");
                }
                self.bump();
                Ok(inner)
            }
            _ => self.error("a formula"),
        }
    }
}

/// Parses a formula; errors carry the character offset of the offending token.
pub fn parse_formula(text: &str) -> Result<Formula> {
    parse_with(text, false)
}

/// As [`parse_formula`], also accepting `0` for `!(v -> v)` and `1` for `v -> v`.
pub fn parse_formula_with_constants(text: &str) -> Result<Formula> {
    parse_with(text, true)
}

fn parse_with(text: &str, constants: bool) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text, constants)?,
        pos: 0,
    };
    let phi = p.implication()?;
    if p.peek() != Tok::End {
        return p.error("end of input");
    }
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v() -> Formula {
        Formula::Var
    }

    #[test]
    fn precedence() {
        assert_eq!(parse_formula("v -> v").unwrap(), Formula::imp(v(), v()));
        assert_eq!(
            parse_formula("(v <| !v) -> v").unwrap(),
            Formula::imp(Formula::subst(v(), Formula::not(v())), v())
        );
        assert_eq!(
            parse_formula("!v <| v").unwrap(),
            Formula::subst(Formula::not(v()), v())
        );
        assert_eq!(
            parse_formula("v + v . v").unwrap(),
            Formula::odot(Formula::oplus(v(), v()), v())
        );
        assert_eq!(
            parse_formula("v + v <| v -> v").unwrap(),
            Formula::imp(Formula::oplus(v(), Formula::subst(v(), v())), v())
        );
    }

    #[test]
    fn unicode() {
        assert_eq!(
            parse_formula("¬v ◄ v → v ⊕ v").unwrap(),
            parse_formula("!v <| v -> v + v").unwrap()
        );
    }

    #[test]
    fn errors_have_positions() {
        match parse_formula("v -> ") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 5),
            other => panic!("{other:?}"),
        }
        match parse_formula("(v -> v") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 7),
            other => panic!("{other:?}"),
        }
        match parse_formula("v x") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_formula("v v").is_err());
        assert!(parse_formula("").is_err());
        assert!(parse_formula("0").is_err());
        assert_eq!(
            parse_formula_with_constants("1 + 0").unwrap(),
            parse_formula("(v -> v) + !(v -> v)").unwrap()
        );
    }
}
