use super::BoolExpr;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Not,
    And,
    Or,
    Xor,
    Implies,
    Iff,
    LParen,
    RParen,
    Const(bool),
    Var(usize),
    End,
}

/// Token plus its 1-based starting column.
type Spanned = (Tok, usize);

fn lex(text: &str, n: usize) -> Result<Vec<Spanned>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let col = i + 1;
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'!' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'^' => Tok::Xor,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0' => Tok::Const(false),
            b'1' => Tok::Const(true),
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Implies
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Tok::Iff
            }
            b'x' | b'z' => {
                let start = i + 1;
                let mut end = start;
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
                if end == start {
                    return Err(Error::Syntax {
                        column: col,
                        message: format!("expected a register number after '{}'", c as char),
                    });
                }
                let index: usize = text[start..end].parse().map_err(|_| Error::Syntax {
                    column: col,
                    message: "register number too large".into(),
                })?;
                if index == 0 || index > n {
                    return Err(Error::VariableOutOfRange {
                        index,
                        n,
                        column: col,
                    });
                }
                i = end - 1;
                Tok::Var(index)
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    column: col,
                    message: format!("unexpected character '{ch}'"),
                });
            }
        };
        out.push((tok, col));
        i += 1;
    }
    out.push((Tok::End, text.len() + 1));
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Tok {
        self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.peek();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn left_assoc(
        &mut self,
        op: Tok,
        next: fn(&mut Self) -> Result<BoolExpr>,
        build: fn(BoolExpr, BoolExpr) -> BoolExpr,
    ) -> Result<BoolExpr> {
        let mut lhs = next(self)?;
        while self.peek() == op {
            self.bump();
            let rhs = next(self)?;
            lhs = build(lhs, rhs);
        }
        Ok(lhs)
    }

    fn iff(&mut self) -> Result<BoolExpr> {
        self.left_assoc(Tok::Iff, Self::implies, BoolExpr::iff)
    }

    fn implies(&mut self) -> Result<BoolExpr> {
        self.left_assoc(Tok::Implies, Self::or, BoolExpr::implies)
    }

    fn or(&mut self) -> Result<BoolExpr> {
        self.left_assoc(Tok::Or, Self::xor, BoolExpr::or)
    }

    fn xor(&mut self) -> Result<BoolExpr> {
        self.left_assoc(Tok::Xor, Self::and, BoolExpr::xor)
    }

    fn and(&mut self) -> Result<BoolExpr> {
        self.left_assoc(Tok::And, Self::unary, BoolExpr::and)
    }

    fn unary(&mut self) -> Result<BoolExpr> {
        if self.peek() == Tok::Not {
            self.bump();
            return Ok(BoolExpr::not(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<BoolExpr> {
        let column = self.column();
        match self.bump() {
            Tok::Var(i) => Ok(BoolExpr::Var(i)),
            Tok::Const(b) => Ok(BoolExpr::Const(b)),
            Tok::LParen => {
                let inner = self.iff()?;
                if self.peek() != Tok::RParen {
                    return Err(Error::Syntax {
                        column: self.column(),
                        message: "expected ')'".into(),
                    });
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => Err(Error::Syntax {
                column,
                message: "unexpected end of input".into(),
            }),
            other => Err(Error::Syntax {
                column,
                message: format!("unexpected token {other:?}"),
            }),
        }
    }
}

/// Parses an update function over registers `x1..xn` (`z1..zn` accepted as
/// aliases).
///
/// Precedence, tightest first: `!`, `&`, `^`, `|`, `->`, `<->`. All binary
/// operators are left-associative.
pub fn parse(text: &str, n: usize) -> Result<BoolExpr> {
    let mut p = Parser {
        toks: lex(text, n)?,
        pos: 0,
    };
    let e = p.iff()?;
    if p.peek() != Tok::End {
        return Err(Error::Syntax {
            column: p.column(),
            message: "trailing input".into(),
        });
    }
    Ok(e)
}
