//! Recursive-descent parser. The first syntax error aborts the parse.

use super::ast::*;
use super::lexer::{tokenize, Keyword, Token, TokenKind};
use super::{DslError, ParseDiagnostic};
use crate::membership::MembershipFunction;
use crate::variable::VariableRole;

type PResult<T> = Result<T, DslError>;

pub fn parse_syntax(src: &str) -> PResult<SystemDefinition> {
    let lexed = tokenize(src)?;
    let mut parser = Parser { tokens: lexed.tokens, pos: 0 };
    let mut items = Vec::new();
    loop {
        let tok = parser.peek();
        match tok.kind {
            TokenKind::Eof => break,
            TokenKind::Keyword(Keyword::System) => items.push(Item::System(parser.system()?)),
            TokenKind::Keyword(Keyword::Hierarchy) => items.push(Item::Hierarchy(parser.hierarchy()?)),
            _ => return Err(parser.unexpected("`system` or `hierarchy`")),
        }
    }
    Ok(SystemDefinition { header: lexed.header, items })
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if !matches!(tok.kind, TokenKind::Eof) {
            self.pos += 1;
        }
        tok
    }

    fn unexpected(&self, expected: &str) -> DslError {
        let tok = self.peek();
        DslError::syntax(ParseDiagnostic::error(
            format!("expected {expected}, found {}", tok.kind),
            tok.span,
            Some(tok.text.clone()),
        ))
    }

    fn at_keyword(&self, kw: Keyword) -> bool {
        self.peek().kind == TokenKind::Keyword(kw)
    }

    fn keyword(&mut self, kw: Keyword) -> PResult<Span> {
        if self.at_keyword(kw) {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(&format!("`{}`", kw.as_str())))
        }
    }

    fn punct(&mut self, kind: TokenKind) -> PResult<Span> {
        if self.peek().kind == kind {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(&kind.to_string()))
        }
    }

    fn ident(&mut self) -> PResult<Ident> {
        match &self.peek().kind {
            TokenKind::Ident(name) => {
                let name = name.clone();
                let span = self.bump().span;
                Ok(Ident::at(name, span))
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    fn number(&mut self) -> PResult<f64> {
        match self.peek().kind {
            TokenKind::Number(v) => {
                self.bump();
                Ok(v)
            }
            _ => Err(self.unexpected("a number")),
        }
    }

    fn ident_list(&mut self) -> PResult<Vec<Ident>> {
        let mut list = vec![self.ident()?];
        while self.peek().kind == TokenKind::Comma {
            self.bump();
            list.push(self.ident()?);
        }
        Ok(list)
    }

    fn system(&mut self) -> PResult<SystemDecl> {
        let span = self.keyword(Keyword::System)?;
        let name = self.ident()?;
        self.punct(TokenKind::LBrace)?;
        let mut variables = Vec::new();
        let mut rules = None;
        loop {
            let tok = self.peek().clone();
            match tok.kind {
                TokenKind::RBrace => {
                    self.bump();
                    break;
                }
                TokenKind::Keyword(Keyword::Input) => variables.push(self.variable(VariableRole::Input)?),
                TokenKind::Keyword(Keyword::Intermediate) => variables.push(self.variable(VariableRole::Intermediate)?),
                TokenKind::Keyword(Keyword::Output) => variables.push(self.variable(VariableRole::Output)?),
                TokenKind::Keyword(Keyword::Rules | Keyword::Rulegen) => {
                    if rules.is_some() {
                        return Err(DslError::syntax(ParseDiagnostic::error(
                            format!("system `{}` already has a rule block", name.name),
                            tok.span,
                            Some(tok.text),
                        )));
                    }
                    rules = Some(self.rule_source()?);
                }
                _ => return Err(self.unexpected("`input`, `intermediate`, `output`, `rules`, `rulegen` or `}`")),
            }
        }
        Ok(SystemDecl { name, variables, rules, span })
    }

    fn variable(&mut self, role: VariableRole) -> PResult<VariableDecl> {
        let span = self.bump().span;
        let name = self.ident()?;
        self.keyword(Keyword::Range)?;
        let lo = self.number()?;
        let hi = self.number()?;
        self.punct(TokenKind::LBrace)?;
        let mut terms = Vec::new();
        while !matches!(self.peek().kind, TokenKind::RBrace) {
            terms.push(self.term()?);
        }
        self.bump();
        Ok(VariableDecl { role, name, lo, hi, terms, span })
    }

    fn term(&mut self) -> PResult<TermDecl> {
        let span = self.keyword(Keyword::Term)?;
        let name = self.ident()?;
        let arity = if self.at_keyword(Keyword::Tri) {
            3
        } else if self.at_keyword(Keyword::Trap) {
            4
        } else {
            return Err(self.unexpected("`tri` or `trap`"));
        };
        self.bump();
        self.punct(TokenKind::LParen)?;
        let mut p = vec![self.number()?];
        for _ in 1..arity {
            self.punct(TokenKind::Comma)?;
            p.push(self.number()?);
        }
        self.punct(TokenKind::RParen)?;
        self.punct(TokenKind::Semi)?;
        let shape = if arity == 3 {
            MembershipFunction::triangular(p[0], p[1], p[2])
        } else {
            MembershipFunction::trapezoidal(p[0], p[1], p[2], p[3])
        };
        Ok(TermDecl { name, shape, span })
    }

    fn rule_source(&mut self) -> PResult<RuleSource> {
        if self.at_keyword(Keyword::Rulegen) {
            let span = self.bump().span;
            self.keyword(Keyword::Mean)?;
            self.punct(TokenKind::Semi)?;
            return Ok(RuleSource::Generate { policy: GenerationPolicy::Mean, span });
        }
        let span = self.keyword(Keyword::Rules)?;
        self.punct(TokenKind::LBrace)?;
        let mut rules = Vec::new();
        while !matches!(self.peek().kind, TokenKind::RBrace) {
            rules.push(self.rule()?);
        }
        self.bump();
        Ok(RuleSource::Explicit { rules, span })
    }

    fn rule(&mut self) -> PResult<RuleDecl> {
        let span = self.keyword(Keyword::If)?;
        let mut antecedents = vec![self.clause()?];
        while self.at_keyword(Keyword::And) {
            self.bump();
            antecedents.push(self.clause()?);
        }
        self.keyword(Keyword::Then)?;
        let consequent = self.clause()?;
        self.punct(TokenKind::Semi)?;
        Ok(RuleDecl { antecedents, consequent, span })
    }

    fn clause(&mut self) -> PResult<ClauseDecl> {
        let variable = self.ident()?;
        self.keyword(Keyword::Is)?;
        let term = self.ident()?;
        Ok(ClauseDecl { variable, term })
    }

    fn hierarchy(&mut self) -> PResult<HierarchyDecl> {
        let span = self.keyword(Keyword::Hierarchy)?;
        let name = self.ident()?;
        self.punct(TokenKind::LBrace)?;
        let mut decl = HierarchyDecl { name, uses: vec![], connections: vec![], inputs: vec![], outputs: vec![], span };
        loop {
            match self.peek().kind {
                TokenKind::RBrace => {
                    self.bump();
                    break;
                }
                TokenKind::Keyword(Keyword::Use) => {
                    let span = self.bump().span;
                    let system = self.ident()?;
                    self.keyword(Keyword::As)?;
                    let alias = self.ident()?;
                    self.punct(TokenKind::Semi)?;
                    decl.uses.push(UseDecl { system, alias, span });
                }
                TokenKind::Keyword(Keyword::Connect) => {
                    let span = self.bump().span;
                    let producer = self.ident()?;
                    self.punct(TokenKind::Dot)?;
                    let output = self.ident()?;
                    self.punct(TokenKind::Arrow)?;
                    let consumer = self.ident()?;
                    self.punct(TokenKind::Dot)?;
                    let input = self.ident()?;
                    self.punct(TokenKind::Semi)?;
                    decl.connections.push(ConnectDecl { producer, output, consumer, input, span });
                }
                TokenKind::Keyword(Keyword::Inputs) => {
                    self.bump();
                    decl.inputs.extend(self.ident_list()?);
                    self.punct(TokenKind::Semi)?;
                }
                TokenKind::Keyword(Keyword::Output) => {
                    self.bump();
                    decl.outputs.extend(self.ident_list()?);
                    self.punct(TokenKind::Semi)?;
                }
                _ => return Err(self.unexpected("`use`, `connect`, `inputs`, `output` or `}`")),
            }
        }
        Ok(decl)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "system tiny {
  input a range 0 1 { term lo tri(0, 0, 1); term hi tri(0, 1, 1); }
  input b range 0 1 { term lo tri(0, 0, 1); term hi tri(0, 1, 1); }
  output y range 0 1 { term no tri(0, 0, 1); term yes tri(0, 1, 1); }
  rules { IF a is lo AND b is hi THEN y is yes; }
}";

    #[test]
    fn minimal_program() {
        let def = parse_syntax(MINIMAL).unwrap();
        let sys = def.systems().next().unwrap();
        assert_eq!(sys.variables.iter().filter(|v| v.role == VariableRole::Input).count(), 2);
        assert_eq!(sys.variables.iter().filter(|v| v.role == VariableRole::Output).count(), 1);
        match sys.rules.as_ref().unwrap() {
            RuleSource::Explicit { rules, .. } => assert_eq!(rules.len(), 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn misspelled_keyword_is_positioned() {
        let src = "system s {\n  rules {\n    IF Q1 iz Weak THEN y is No;\n  }\n}";
        let err = parse_syntax(src).unwrap_err();
        let d = &err.diagnostics[0];
        assert_eq!((d.line, d.column), (3, 11));
        assert_eq!(d.token.as_deref(), Some("iz"));
        assert!(d.message.contains("`is`"), "{}", d.message);
    }

    #[test]
    fn wrong_arity_and_truncation() {
        let err = parse_syntax("system s { input a range 0 1 { term x tri(0, 1); } }").unwrap_err();
        assert!(err.diagnostics[0].message.contains("`,`"));
        let err = parse_syntax("system s { input a range 0 1 {").unwrap_err();
        assert!(err.diagnostics[0].message.contains("end of input"));
    }

    #[test]
    fn second_rule_block_is_rejected() {
        let err = parse_syntax("system s { rulegen mean; rules { } }").unwrap_err();
        assert!(err.diagnostics[0].message.contains("already has a rule block"));
    }

    #[test]
    fn hierarchy_statements() {
        let def = parse_syntax(
            "hierarchy h { use a as A; use b as B; connect A.y -> B.x; inputs p, q; inputs r; output z; }",
        )
        .unwrap();
        let h = def.hierarchies().next().unwrap();
        assert_eq!(h.uses.len(), 2);
        assert_eq!(h.connections[0].consumer.name, "B");
        assert_eq!(h.inputs.iter().map(|i| i.name.as_str()).collect::<Vec<_>>(), ["p", "q", "r"]);
        assert_eq!(h.outputs[0].name, "z");
    }
}
