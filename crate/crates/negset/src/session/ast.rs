use negset_core::{ContradictionSpec, NegotiationSet, ResolutionPolicy, Universe};

/// Operators usable both infix and in n-ary call form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetOp {
    Odot,
    Oplus,
    Union,
    Inter,
}

impl SetOp {
    pub fn keyword(self) -> &'static str {
        match self {
            SetOp::Odot => "odot",
            SetOp::Oplus => "oplus",
            SetOp::Union => "union",
            SetOp::Inter => "inter",
        }
    }

    pub fn from_keyword(word: &str) -> Option<SetOp> {
        Some(match word {
            "odot" => SetOp::Odot,
            "oplus" => SetOp::Oplus,
            "union" => SetOp::Union,
            "inter" => SetOp::Inter,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    AgentRef(String),
    Binding(String),
    Complement(Box<Expr>),
    Difference(Box<Expr>, Box<Expr>),
    Binary(SetOp, Box<Expr>, Box<Expr>),
    Nary(SetOp, Vec<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgentDecl {
    pub name: String,
    pub value: NegotiationSet,
}

/// A contradiction or dominance line, as written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Relation {
    Strong(String, String),
    Weak(String, String),
    /// `greater > lesser`
    Dominance(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Let {
        name: String,
        expr: Expr,
    },
    Eval(Expr),
    AssertDisc(Expr),
    Expect {
        expr: Expr,
        expected: NegotiationSet,
    },
}

/// A parsed and validated session.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SessionScript {
    pub universe: Universe,
    pub agents: Vec<AgentDecl>,
    pub relations: Vec<Relation>,
    /// `None` when the script has no policy line; evaluation then uses strict.
    pub policy: Option<ResolutionPolicy>,
    pub statements: Vec<Statement>,
    /// Built from `relations`, with dominance closed transitively.
    pub spec: ContradictionSpec,
}

impl SessionScript {
    pub fn effective_policy(&self) -> ResolutionPolicy {
        self.policy.clone().unwrap_or_default()
    }
}
