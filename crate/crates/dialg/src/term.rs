//! Terms over free algebras, free dialgebras, and generic n-ary operation
//! families.

use std::fmt;

use thiserror::Error;

/// A generator of a free algebra. Equality and ordering go through `id`
/// only; `name` is display metadata.
#[derive(Debug, Clone)]
pub struct Variable {
    id: u32,
    name: String,
}

impl Variable {
    pub fn new(id: u32, name: impl Into<String>) -> Self {
        let name = name.into();
        assert!(!name.is_empty(), "variable name must be nonempty");
        Variable { id, name }
    }

    pub fn id(&self) -> u32 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The standard generator set `a, b, c, ...` used for basis monomials.
    pub fn standard(n: usize) -> Vec<Variable> {
        const NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];
        (0..n)
            .map(|i| {
                if i < NAMES.len() {
                    Variable::new(i as u32, NAMES[i])
                } else {
                    Variable::new(i as u32, format!("v{i}"))
                }
            })
            .collect()
    }
}

impl PartialEq for Variable {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Eq for Variable {}

impl PartialOrd for Variable {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Variable {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.id.cmp(&other.id)
    }
}

impl std::hash::Hash for Variable {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.id.hash(state);
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Which operation family a term or polynomial lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Signature {
    /// One binary operation, written `x*y`.
    Plain,
    /// Two binary operations: left `-|` and right `|-` products.
    Dialgebra,
    /// A family of n-ary operations `{-,...,-}_j`, subscripted or not.
    Nary(u8),
}

impl Signature {
    pub fn arity(self) -> u8 {
        match self {
            Signature::Plain | Signature::Dialgebra => 2,
            Signature::Nary(n) => n,
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Signature::Plain => f.write_str("algebra"),
            Signature::Dialgebra => f.write_str("dialgebra"),
            Signature::Nary(n) => write!(f, "{n}-ary"),
        }
    }
}

/// Operation symbol attached to an internal node of a term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OperationTag {
    /// The single product of a one-operation algebra.
    Plain,
    /// Left dialgebra product `-|`.
    DiLeft,
    /// Right dialgebra product `|-`.
    DiRight,
    /// Generic n-ary operation, optionally subscripted `{-,...,-}_j`.
    Slot { index: Option<u8>, arity: u8 },
}

impl OperationTag {
    pub fn arity(self) -> u8 {
        match self {
            OperationTag::Plain | OperationTag::DiLeft | OperationTag::DiRight => 2,
            OperationTag::Slot { arity, .. } => arity,
        }
    }

    /// The signature this tag belongs to.
    pub fn signature(self) -> Signature {
        match self {
            OperationTag::Plain => Signature::Plain,
            OperationTag::DiLeft | OperationTag::DiRight => Signature::Dialgebra,
            OperationTag::Slot { arity, .. } => Signature::Nary(arity),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TermError {
    #[error("mixed signatures in one term: {0} and {1}")]
    MixedSignature(Signature, Signature),
    #[error("operation arity {arity} does not match {children} children")]
    ArityMismatch { arity: u8, children: usize },
    #[error("slot subscript {index} out of range 1..={arity}")]
    SlotOutOfRange { index: u8, arity: u8 },
    #[error("term mixes subscripted and unsubscripted operations")]
    MixedSubscripting,
    #[error("expected signature {expected}, found {found}")]
    WrongSignature {
        expected: Signature,
        found: Signature,
    },
}

/// A rooted operation tree over variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Leaf(Variable),
    Node(OperationTag, Vec<Term>),
}

impl Term {
    pub fn leaf(v: Variable) -> Term {
        Term::Leaf(v)
    }

    pub fn node(tag: OperationTag, children: Vec<Term>) -> Result<Term, TermError> {
        if let OperationTag::Slot {
            index: Some(j),
            arity,
        } = tag
        {
            if j == 0 || j > arity {
                return Err(TermError::SlotOutOfRange { index: j, arity });
            }
        }
        if tag.arity() as usize != children.len() {
            return Err(TermError::ArityMismatch {
                arity: tag.arity(),
                children: children.len(),
            });
        }
        Ok(Term::Node(tag, children))
    }

    /// Binary product in the plain signature.
    pub fn times(left: Term, right: Term) -> Term {
        Term::Node(OperationTag::Plain, vec![left, right])
    }

    /// Left dialgebra product `left -| right`.
    pub fn di_left(left: Term, right: Term) -> Term {
        Term::Node(OperationTag::DiLeft, vec![left, right])
    }

    /// Right dialgebra product `left |- right`.
    pub fn di_right(left: Term, right: Term) -> Term {
        Term::Node(OperationTag::DiRight, vec![left, right])
    }

    pub fn degree(&self) -> usize {
        match self {
            Term::Leaf(_) => 1,
            Term::Node(_, children) => children.iter().map(Term::degree).sum(),
        }
    }

    /// Leaves in planar (left-to-right) order.
    pub fn leaves(&self) -> Vec<&Variable> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a Variable>) {
        match self {
            Term::Leaf(v) => out.push(v),
            Term::Node(_, children) => {
                for c in children {
                    c.collect_leaves(out);
                }
            }
        }
    }

    /// The common signature of all operations in the term, if consistent.
    /// A bare leaf has no operations and fits any signature; `None` is
    /// returned for it.
    pub fn signature(&self) -> Result<Option<Signature>, TermError> {
        match self {
            Term::Leaf(_) => Ok(None),
            Term::Node(tag, children) => {
                let mut sig = tag.signature();
                if tag.arity() as usize != children.len() {
                    return Err(TermError::ArityMismatch {
                        arity: tag.arity(),
                        children: children.len(),
                    });
                }
                for c in children {
                    if let Some(child_sig) = c.signature()? {
                        sig = merge_signatures(sig, child_sig)?;
                    }
                }
                Ok(Some(sig))
            }
        }
    }

    /// True when every variable of the term occurs exactly once.
    pub fn is_multilinear(&self) -> bool {
        let leaves = self.leaves();
        let mut ids: Vec<u32> = leaves.iter().map(|v| v.id()).collect();
        ids.sort_unstable();
        ids.windows(2).all(|w| w[0] != w[1])
    }

    /// The center of a dialgebra term: follow the product directions,
    /// `c(y -| z) = c(y)` and `c(y |- z) = c(z)`. For generic subscripted
    /// operations, descend into the subscript argument.
    pub fn center(&self) -> Result<&Variable, TermError> {
        match self {
            Term::Leaf(v) => Ok(v),
            Term::Node(tag, children) => match tag {
                OperationTag::DiLeft => children[0].center(),
                OperationTag::DiRight => children[1].center(),
                OperationTag::Slot {
                    index: Some(j),
                    arity: _,
                } => children[*j as usize - 1].center(),
                OperationTag::Plain => Err(TermError::WrongSignature {
                    expected: Signature::Dialgebra,
                    found: Signature::Plain,
                }),
                OperationTag::Slot { index: None, arity } => Err(TermError::WrongSignature {
                    expected: Signature::Dialgebra,
                    found: Signature::Nary(*arity),
                }),
            },
        }
    }
}

fn merge_signatures(a: Signature, b: Signature) -> Result<Signature, TermError> {
    if a == b {
        Ok(a)
    } else {
        Err(TermError::MixedSignature(a, b))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Leaf(v) => write!(f, "{v}"),
            Term::Node(tag, children) => match tag {
                OperationTag::Plain | OperationTag::DiLeft | OperationTag::DiRight => {
                    let op = match tag {
                        OperationTag::Plain => "*",
                        OperationTag::DiLeft => "-|",
                        OperationTag::DiRight => "|-",
                        _ => unreachable!(),
                    };
                    let wrap = |t: &Term, f: &mut fmt::Formatter<'_>| -> fmt::Result {
                        if matches!(t, Term::Node(..)) {
                            write!(f, "({t})")
                        } else {
                            write!(f, "{t}")
                        }
                    };
                    wrap(&children[0], f)?;
                    if *tag == OperationTag::Plain {
                        write!(f, "{op}")?;
                    } else {
                        write!(f, " {op} ")?;
                    }
                    wrap(&children[1], f)
                }
                OperationTag::Slot { index, .. } => {
                    f.write_str("{")?;
                    for (i, c) in children.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{c}")?;
                    }
                    f.write_str("}")?;
                    if let Some(j) = index {
                        write!(f, "_{j}")?;
                    }
                    Ok(())
                }
            },
        }
    }
}
