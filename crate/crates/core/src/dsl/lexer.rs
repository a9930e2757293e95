use super::{DslError, Pos};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    /// Unsigned decimal digits, parsed at the use site.
    Int(String),
    Str(String),
    Sym(char),
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(s) => format!("`{s}`"),
            Tok::Str(s) => format!("string {s:?}"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

pub(crate) fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub(crate) fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '.'
}

pub(crate) fn lex(src: &str) -> Result<Vec<Token>, DslError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        if c.is_whitespace() {
            bump!();
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                bump!();
            }
        } else if is_ident_start(c) {
            let mut s = String::new();
            while chars.peek().is_some_and(|&c| is_ident_char(c)) {
                s.push(bump!().unwrap());
            }
            out.push(Token { tok: Tok::Ident(s), pos });
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                s.push(bump!().unwrap());
            }
            if chars.peek().is_some_and(|&c| is_ident_start(c)) {
                return Err(DslError::syntax(Pos { line, col }, "a number cannot run into a name"));
            }
            out.push(Token { tok: Tok::Int(s), pos });
        } else if c == '"' {
            bump!();
            let mut s = String::new();
            loop {
                match bump!() {
                    None | Some('\n') => return Err(DslError::syntax(pos, "unterminated string")),
                    Some('"') => break,
                    Some('\\') => match bump!() {
                        Some('"') => s.push('"'),
                        Some('\\') => s.push('\\'),
                        Some('n') => s.push('\n'),
                        Some('t') => s.push('\t'),
                        other => {
                            let what = other.map_or("end of input".to_string(), |c| format!("`\\{c}`"));
                            return Err(DslError::syntax(Pos { line, col }, format!("bad escape {what}")));
                        }
                    },
                    Some(ch) => s.push(ch),
                }
            }
            out.push(Token { tok: Tok::Str(s), pos });
        } else if "{}(),;=/-+".contains(c) {
            bump!();
            out.push(Token { tok: Tok::Sym(c), pos });
        } else {
            return Err(DslError::syntax(pos, format!("unexpected character `{c}`")));
        }
    }
    out.push(Token { tok: Tok::Eof, pos: Pos { line, col } });
    Ok(out)
}
