use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Poly;

/// The ambient polynomial ring `F_p[x_1..x_n]` with a fixed monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: PrimeField,
    names: Vec<String>,
    order: MonomialOrder,
}

pub type RingRef = Arc<PolyRing>;

impl PolyRing {
    pub fn new(p: u64, names: &[&str], order: MonomialOrder) -> Result<RingRef> {
        Self::with_names(p, names.iter().map(|s| s.to_string()).collect(), order)
    }

    pub fn with_names(p: u64, names: Vec<String>, order: MonomialOrder) -> Result<RingRef> {
        let field = PrimeField::new(p)?;
        if names.is_empty() {
            return Err(Error::InvalidRing("at least one variable is required".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::InvalidRing(format!("invalid variable name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidRing(format!("duplicate variable name {n:?}")));
            }
        }
        if let MonomialOrder::Elimination(k) = order {
            if k > names.len() {
                return Err(Error::InvalidRing("elimination block too large".into()));
            }
        }
        Ok(Arc::new(Self {
            field,
            names,
            order,
        }))
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    #[inline]
    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same variables and characteristic, different order.
    pub fn with_order(&self, order: MonomialOrder) -> RingRef {
        Arc::new(Self {
            field: self.field,
            names: self.names.clone(),
            order,
        })
    }

    /// Ring with `extra` auxiliary variables in front and an elimination
    /// order for them. Auxiliary names never clash with user identifiers
    /// because they start with a character the parser rejects.
    pub fn with_front_block(&self, extra: &[String]) -> RingRef {
        let mut names: Vec<String> = extra.to_vec();
        names.extend(self.names.iter().cloned());
        Arc::new(Self {
            field: self.field,
            names,
            order: MonomialOrder::Elimination(extra.len()),
        })
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial::one(self.nvars())
    }

    /// Convenience: the variable with the given index as a polynomial.
    pub fn var(self: &RingRef, index: usize) -> Poly {
        Poly::var(self, index)
    }

    pub fn vars(self: &RingRef) -> Vec<Poly> {
        (0..self.nvars()).map(|i| Poly::var(self, i)).collect()
    }

    /// Human form such as `F2[x,y]`.
    pub fn describe(&self) -> String {
        format!("F{}[{}]", self.characteristic(), self.names.join(","))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Checks that two rings agree, producing a ring-mismatch error otherwise.
pub fn ensure_same(a: &PolyRing, b: &PolyRing) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::RingMismatch(format!(
            "{} ({}) vs {} ({})",
            a.describe(),
            a.order.name(),
            b.describe(),
            b.order.name()
        )))
    }
}
