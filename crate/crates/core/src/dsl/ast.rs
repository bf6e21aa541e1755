use crate::membership::MembershipFunction;
use crate::variable::VariableRole;
use std::fmt;

/// 1-based source position.
///
/// Spans never take part in structural equality: two nodes parsed from
/// differently formatted text compare equal when their content matches.
#[derive(Debug, Clone, Copy, Default, Eq)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl Span {
    pub fn new(line: usize, column: usize) -> Self {
        Span { line, column }
    }
}

impl PartialEq for Span {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

impl Ident {
    pub fn new(name: impl Into<String>) -> Self {
        Ident { name: name.into(), span: Span::default() }
    }

    pub fn at(name: impl Into<String>, span: Span) -> Self {
        Ident { name: name.into(), span }
    }
}

/// Parsed definition file.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SystemDefinition {
    /// Comment lines before the first declaration, without the leading `#`.
    pub header: Vec<String>,
    pub items: Vec<Item>,
}

impl SystemDefinition {
    pub fn systems(&self) -> impl Iterator<Item = &SystemDecl> {
        self.items.iter().filter_map(|i| match i {
            Item::System(s) => Some(s),
            Item::Hierarchy(_) => None,
        })
    }

    pub fn hierarchies(&self) -> impl Iterator<Item = &HierarchyDecl> {
        self.items.iter().filter_map(|i| match i {
            Item::Hierarchy(h) => Some(h),
            Item::System(_) => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Item {
    System(SystemDecl),
    Hierarchy(HierarchyDecl),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SystemDecl {
    pub name: Ident,
    pub variables: Vec<VariableDecl>,
    pub rules: Option<RuleSource>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariableDecl {
    pub role: VariableRole,
    pub name: Ident,
    pub lo: f64,
    pub hi: f64,
    pub terms: Vec<TermDecl>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TermDecl {
    pub name: Ident,
    pub shape: MembershipFunction,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenerationPolicy {
    Mean,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RuleSource {
    Explicit { rules: Vec<RuleDecl>, span: Span },
    Generate { policy: GenerationPolicy, span: Span },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClauseDecl {
    pub variable: Ident,
    pub term: Ident,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RuleDecl {
    pub antecedents: Vec<ClauseDecl>,
    pub consequent: ClauseDecl,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HierarchyDecl {
    pub name: Ident,
    pub uses: Vec<UseDecl>,
    pub connections: Vec<ConnectDecl>,
    pub inputs: Vec<Ident>,
    pub outputs: Vec<Ident>,
    pub span: Span,
}

/// `use <system> as <alias>;`
#[derive(Debug, Clone, PartialEq)]
pub struct UseDecl {
    pub system: Ident,
    pub alias: Ident,
    pub span: Span,
}

/// `connect <alias>.<output> -> <alias>.<input>;`
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectDecl {
    pub producer: Ident,
    pub output: Ident,
    pub consumer: Ident,
    pub input: Ident,
    pub span: Span,
}
