use super::ast::Span;
use super::{DslError, ParseDiagnostic};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keyword {
    System,
    Hierarchy,
    Input,
    Intermediate,
    Output,
    Range,
    Term,
    Tri,
    Trap,
    Rules,
    Rulegen,
    Mean,
    If,
    Is,
    And,
    Then,
    Use,
    As,
    Connect,
    Inputs,
}

impl Keyword {
    const ALL: [Keyword; 20] = [
        Keyword::System,
        Keyword::Hierarchy,
        Keyword::Input,
        Keyword::Intermediate,
        Keyword::Output,
        Keyword::Range,
        Keyword::Term,
        Keyword::Tri,
        Keyword::Trap,
        Keyword::Rules,
        Keyword::Rulegen,
        Keyword::Mean,
        Keyword::If,
        Keyword::Is,
        Keyword::And,
        Keyword::Then,
        Keyword::Use,
        Keyword::As,
        Keyword::Connect,
        Keyword::Inputs,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Keyword::System => "system",
            Keyword::Hierarchy => "hierarchy",
            Keyword::Input => "input",
            Keyword::Intermediate => "intermediate",
            Keyword::Output => "output",
            Keyword::Range => "range",
            Keyword::Term => "term",
            Keyword::Tri => "tri",
            Keyword::Trap => "trap",
            Keyword::Rules => "rules",
            Keyword::Rulegen => "rulegen",
            Keyword::Mean => "mean",
            Keyword::If => "if",
            Keyword::Is => "is",
            Keyword::And => "and",
            Keyword::Then => "then",
            Keyword::Use => "use",
            Keyword::As => "as",
            Keyword::Connect => "connect",
            Keyword::Inputs => "inputs",
        }
    }

    /// Keywords match case-insensitively.
    pub fn lookup(word: &str) -> Option<Keyword> {
        Self::ALL.iter().copied().find(|k| k.as_str().eq_ignore_ascii_case(word))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    Ident(String),
    Number(f64),
    Keyword(Keyword),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Semi,
    Comma,
    Dot,
    Arrow,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident(s) => write!(f, "identifier `{s}`"),
            TokenKind::Number(n) => write!(f, "number `{n}`"),
            TokenKind::Keyword(k) => write!(f, "keyword `{}`", k.as_str()),
            TokenKind::LBrace => f.write_str("`{`"),
            TokenKind::RBrace => f.write_str("`}`"),
            TokenKind::LParen => f.write_str("`(`"),
            TokenKind::RParen => f.write_str("`)`"),
            TokenKind::Semi => f.write_str("`;`"),
            TokenKind::Comma => f.write_str("`,`"),
            TokenKind::Dot => f.write_str("`.`"),
            TokenKind::Arrow => f.write_str("`->`"),
            TokenKind::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub span: Span,
}

/// Tokens plus the `#` comments that precede the first token.
#[derive(Debug)]
pub struct Lexed {
    pub tokens: Vec<Token>,
    pub header: Vec<String>,
}

pub fn tokenize(src: &str) -> Result<Lexed, DslError> {
    let chars: Vec<char> = src.chars().collect();
    let mut tokens = Vec::new();
    let mut header = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);

    while i < chars.len() {
        let c = chars[i];
        let span = Span::new(line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            let start = i + 1;
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
                col += 1;
            }
            if tokens.is_empty() {
                header.push(chars[start..i].iter().collect::<String>().trim_end().to_string());
            }
            continue;
        }
        let start = i;
        let kind = if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            match Keyword::lookup(&word) {
                Some(k) => TokenKind::Keyword(k),
                None => TokenKind::Ident(word),
            }
        } else if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            i += 1;
            i = scan_number(&chars, i);
            let text: String = chars[start..i].iter().collect();
            match text.parse::<f64>() {
                Ok(v) if v.is_finite() => TokenKind::Number(v),
                _ => return Err(syntax(span, format!("invalid number `{text}`"), &text)),
            }
        } else {
            i += 1;
            match c {
                '{' => TokenKind::LBrace,
                '}' => TokenKind::RBrace,
                '(' => TokenKind::LParen,
                ')' => TokenKind::RParen,
                ';' => TokenKind::Semi,
                ',' => TokenKind::Comma,
                '.' => TokenKind::Dot,
                '-' if chars.get(i) == Some(&'>') => {
                    i += 1;
                    TokenKind::Arrow
                }
                other => return Err(syntax(span, format!("unexpected character `{other}`"), &other.to_string())),
            }
        };
        let text: String = chars[start..i].iter().collect();
        col += i - start;
        tokens.push(Token { kind, text, span });
    }
    tokens.push(Token { kind: TokenKind::Eof, text: String::new(), span: Span::new(line, col) });
    Ok(Lexed { tokens, header })
}

fn scan_number(chars: &[char], mut i: usize) -> usize {
    let digits = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
    };
    digits(&mut i);
    if chars.get(i) == Some(&'.') && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) {
        i += 1;
        digits(&mut i);
    }
    if matches!(chars.get(i), Some('e' | 'E')) {
        let mut j = i + 1;
        if matches!(chars.get(j), Some('+' | '-')) {
            j += 1;
        }
        if chars.get(j).is_some_and(|d| d.is_ascii_digit()) {
            i = j;
            digits(&mut i);
        }
    }
    i
}

fn syntax(span: Span, message: String, token: &str) -> DslError {
    DslError::syntax(ParseDiagnostic::error(message, span, Some(token.to_string())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<TokenKind> {
        tokenize(src).unwrap().tokens.into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn keywords_are_case_insensitive() {
        assert_eq!(
            kinds("IF If iF q1"),
            vec![
                TokenKind::Keyword(Keyword::If),
                TokenKind::Keyword(Keyword::If),
                TokenKind::Keyword(Keyword::If),
                TokenKind::Ident("q1".into()),
                TokenKind::Eof
            ]
        );
    }

    #[test]
    fn numbers_and_arrows() {
        assert_eq!(
            kinds("-2.5 1e3 a.b -> 7."),
            vec![
                TokenKind::Number(-2.5),
                TokenKind::Number(1000.0),
                TokenKind::Ident("a".into()),
                TokenKind::Dot,
                TokenKind::Ident("b".into()),
                TokenKind::Arrow,
                TokenKind::Number(7.0),
                TokenKind::Dot,
                TokenKind::Eof
            ]
        );
    }

    #[test]
    fn positions_and_header_comments() {
        let lexed = tokenize("# one\n#two\n\n  system x # trailing\n").unwrap();
        assert_eq!(lexed.header, vec![" one".to_string(), "two".to_string()]);
        assert_eq!((lexed.tokens[0].span.line, lexed.tokens[0].span.column), (4, 3));
        assert_eq!((lexed.tokens[1].span.line, lexed.tokens[1].span.column), (4, 10));
    }

    #[test]
    fn stray_character_is_positioned() {
        let err = tokenize("system x {\n  @\n}").unwrap_err();
        let d = &err.diagnostics[0];
        assert_eq!((d.line, d.column), (2, 3));
    }
}
