//! Text form of terms.
//!
//! ```text
//! term  := ident | "(" term "*" term ")" | "[" term "," term "," term "]"
//! ident := [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! Whitespace between tokens is ignored. Unparenthesized chains `x*y*z` are
//! also accepted and associate to the left. The printer always emits the
//! fully parenthesized form.

use crate::error::{Error, Result};
use crate::terms::{Alphabet, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Token<'a> {
    Ident(&'a str),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Star,
    End,
}

impl Token<'_> {
    fn describe(&self) -> String {
        match self {
            Token::Ident(s) => format!("identifier {s:?}"),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::LBracket => "'['".into(),
            Token::RBracket => "']'".into(),
            Token::Comma => "','".into(),
            Token::Star => "'*'".into(),
            Token::End => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn next_token(&mut self) -> Result<(usize, Token<'a>)> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&b) = bytes.get(start) else {
            return Ok((start, Token::End));
        };
        let single = match b {
            b'(' => Some(Token::LParen),
            b')' => Some(Token::RParen),
            b'[' => Some(Token::LBracket),
            b']' => Some(Token::RBracket),
            b',' => Some(Token::Comma),
            b'*' => Some(Token::Star),
            _ => None,
        };
        if let Some(tok) = single {
            self.pos += 1;
            return Ok((start, tok));
        }
        if b.is_ascii_alphabetic() || b == b'_' {
            let mut end = start + 1;
            while end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_') {
                end += 1;
            }
            self.pos = end;
            return Ok((start, Token::Ident(&self.src[start..end])));
        }
        let ch = self.src[start..].chars().next().unwrap_or('?');
        Err(Error::Parse {
            offset: start,
            message: format!("unexpected character {ch:?}"),
        })
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    peeked: (usize, Token<'a>),
    alphabet: &'a Alphabet,
}

impl<'a> Parser<'a> {
    fn bump(&mut self) -> Result<(usize, Token<'a>)> {
        let next = self.lexer.next_token()?;
        Ok(std::mem::replace(&mut self.peeked, next))
    }

    fn expect(&mut self, want: Token<'static>) -> Result<()> {
        let (offset, tok) = self.bump()?;
        if tok == want {
            Ok(())
        } else {
            Err(Error::Parse {
                offset,
                message: format!("expected {}, found {}", want.describe(), tok.describe()),
            })
        }
    }

    // chain := primary ("*" primary)*
    fn chain(&mut self) -> Result<Term> {
        let mut acc = self.primary()?;
        while self.peeked.1 == Token::Star {
            self.bump()?;
            let rhs = self.primary()?;
            acc = Term::star(acc, rhs);
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<Term> {
        let (offset, tok) = self.bump()?;
        match tok {
            Token::Ident(name) => match self.alphabet.rank_of(name) {
                Some(rank) => Ok(Term::generator(rank)),
                None => Err(Error::UnknownGenerator {
                    name: name.to_string(),
                    offset,
                }),
            },
            Token::LParen => {
                let inner = self.chain()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            Token::LBracket => {
                let x = self.chain()?;
                self.expect(Token::Comma)?;
                let y = self.chain()?;
                self.expect(Token::Comma)?;
                let z = self.chain()?;
                self.expect(Token::RBracket)?;
                Ok(Term::bracket(x, y, z))
            }
            other => Err(Error::Parse {
                offset,
                message: format!("expected a term, found {}", other.describe()),
            }),
        }
    }
}

/// Parses a term over `alphabet`.
pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Term> {
    let mut lexer = Lexer { src: text, pos: 0 };
    let first = lexer.next_token()?;
    let mut parser = Parser {
        lexer,
        peeked: first,
        alphabet,
    };
    let term = parser.chain()?;
    let (offset, tok) = parser.bump()?;
    if tok != Token::End {
        return Err(Error::Parse {
            offset,
            message: format!("trailing input: {}", tok.describe()),
        });
    }
    Ok(term)
}

/// Canonical fully parenthesized text of a term.
pub fn print(term: &Term, alphabet: &Alphabet) -> String {
    term.display(alphabet).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b", "c"]).unwrap()
    }

    #[test]
    fn parses_grammar_examples() {
        let al = ab();
        let (a, b) = (Term::generator(0), Term::generator(1));
        assert_eq!(
            parse("[b,a,a]", &al).unwrap(),
            Term::bracket(b.clone(), a.clone(), a.clone())
        );
        assert_eq!(
            parse("(b*a)*b", &al).unwrap(),
            Term::star(Term::star(b.clone(), a.clone()), b.clone())
        );
        assert_eq!(
            parse(" b * a * b ", &al).unwrap(),
            parse("((b*a)*b)", &al).unwrap()
        );
        assert_eq!(parse("(a)", &al).unwrap(), a);
    }

    #[test]
    fn reports_syntax_errors_with_offsets() {
        let al = ab();
        match parse("b**a", &al) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(matches!(parse("[a,b]", &al), Err(Error::Parse { offset: 4, .. })));
        assert!(matches!(parse("a b", &al), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse("", &al), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(parse("a+b", &al), Err(Error::Parse { offset: 1, .. })));
    }

    #[test]
    fn unknown_generator() {
        match parse("[a,b,zz]", &ab()) {
            Err(Error::UnknownGenerator { name, offset }) => {
                assert_eq!(name, "zz");
                assert_eq!(offset, 5);
            }
            other => panic!("expected unknown generator, got {other:?}"),
        }
    }

    #[test]
    fn printer_is_fully_parenthesized() {
        let al = ab();
        let t = parse("b*a*[a, c*b, a]", &al).unwrap();
        assert_eq!(print(&t, &al), "((b*a)*[a,(c*b),a])");
    }
}
