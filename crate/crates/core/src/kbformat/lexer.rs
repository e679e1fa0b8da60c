use super::{ParseDiagnostic, SourceSpan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Number(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Amp,
    Arrow,
    Bang,
    Newline,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(s) => format!("number `{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Arrow => "`=>`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn peek2(&self) -> Option<char> {
        self.text[self.pos..].chars().nth(1)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn span_from(&self, start: usize, line: usize, col: usize) -> SourceSpan {
        SourceSpan { line, column: col, start, end: self.pos }
    }
}

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// Splits a document into tokens. Unknown characters become diagnostics and
/// are skipped.
pub(crate) fn lex(text: &str, diagnostics: &mut Vec<ParseDiagnostic>) -> Vec<Token> {
    let mut cur = Cursor { text, pos: 0, line: 1, col: 1 };
    let mut out = Vec::new();
    while let Some(c) = cur.peek() {
        let (start, line, col) = (cur.pos, cur.line, cur.col);
        let single = |t: Tok| Some(t);
        let tok = match c {
            '\n' => {
                cur.bump();
                single(Tok::Newline)
            }
            ' ' | '\t' | '\r' => {
                cur.bump();
                None
            }
            '#' => {
                while cur.peek().is_some_and(|c| c != '\n') {
                    cur.bump();
                }
                None
            }
            '(' | ')' | '{' | '}' | ',' | ':' | '&' | '!' => {
                cur.bump();
                single(match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    ',' => Tok::Comma,
                    ':' => Tok::Colon,
                    '&' => Tok::Amp,
                    _ => Tok::Bang,
                })
            }
            '=' if cur.peek2() == Some('>') => {
                cur.bump();
                cur.bump();
                single(Tok::Arrow)
            }
            c if c.is_ascii_digit() || c == '.' || (c == '-' && cur.peek2().is_some_and(|d| d.is_ascii_digit() || d == '.')) => {
                cur.bump();
                while cur.peek().is_some_and(|c| c.is_ascii_digit() || c == '.') {
                    cur.bump();
                }
                single(Tok::Number(text[start..cur.pos].to_string()))
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while cur.peek().is_some_and(ident_char) {
                    cur.bump();
                }
                single(Tok::Ident(text[start..cur.pos].to_string()))
            }
            other => {
                cur.bump();
                diagnostics.push(ParseDiagnostic::error(cur.span_from(start, line, col), format!("unexpected character `{other}`"), None));
                None
            }
        };
        if let Some(tok) = tok {
            out.push(Token { tok, span: cur.span_from(start, line, col) });
        }
    }
    out.push(Token { tok: Tok::Eof, span: SourceSpan { line: cur.line, column: cur.col, start: cur.pos, end: cur.pos } });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(text: &str) -> Vec<Tok> {
        let mut d = Vec::new();
        let out = lex(text, &mut d).into_iter().map(|t| t.tok).collect();
        assert!(d.is_empty(), "{d:?}");
        out
    }

    #[test]
    fn tokens_and_spans() {
        assert_eq!(
            toks("fact !P(a', 1, -2) : .5 # note\r\n=>"),
            vec![
                Tok::Ident("fact".into()),
                Tok::Bang,
                Tok::Ident("P".into()),
                Tok::LParen,
                Tok::Ident("a'".into()),
                Tok::Comma,
                Tok::Number("1".into()),
                Tok::Comma,
                Tok::Number("-2".into()),
                Tok::RParen,
                Tok::Colon,
                Tok::Number(".5".into()),
                Tok::Newline,
                Tok::Arrow,
                Tok::Eof,
            ]
        );
        let mut d = Vec::new();
        let t = lex("sort S\n  pred", &mut d);
        assert_eq!((t[3].span.line, t[3].span.column, t[3].span.start, t[3].span.end), (2, 3, 9, 13));
    }

    #[test]
    fn stray_characters_are_reported() {
        let mut d = Vec::new();
        lex("sort é$", &mut d);
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].span.column, 6);
    }
}
