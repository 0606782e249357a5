use super::SessionError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Word(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Eq,
    Gt,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Gt => "`>`".into(),
        }
    }
}

/// A token with its 1-based column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub column: usize,
}

fn punct(c: char) -> Option<Tok> {
    Some(match c {
        '{' => Tok::LBrace,
        '}' => Tok::RBrace,
        '[' => Tok::LBracket,
        ']' => Tok::RBracket,
        '(' => Tok::LParen,
        ')' => Tok::RParen,
        ',' => Tok::Comma,
        '=' => Tok::Eq,
        '>' => Tok::Gt,
        _ => return None,
    })
}

/// Tokenizes one line; everything from `#` on is a comment.
pub(crate) fn lex_line(text: &str, line: usize) -> Result<Vec<Spanned>, SessionError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if let Some(tok) = punct(c) {
            out.push(Spanned { tok, column: i + 1 });
            i += 1;
            continue;
        }
        if c.is_control() {
            return Err(SessionError::parse(
                line,
                i + 1,
                format!("unexpected character {c:?}"),
            ));
        }
        let start = i;
        while i < chars.len()
            && !chars[i].is_whitespace()
            && chars[i] != '#'
            && !chars[i].is_control()
            && punct(chars[i]).is_none()
        {
            i += 1;
        }
        out.push(Spanned {
            tok: Tok::Word(chars[start..i].iter().collect()),
            column: start + 1,
        });
    }
    Ok(out)
}
