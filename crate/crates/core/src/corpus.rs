//! Named Coxeter systems and the intervals they contribute to a corpus.

use rayon::prelude::*;

use crate::coxeter::{CoxeterError, CoxeterMatrix, CoxeterSystem, Element};
use crate::polynomials::KlEngine;

/// Enumeration cap for systems read without an element-length bound.
pub const FINITE_CAP: usize = 200_000;

/// Builtin names: `A<n>`, `B<n>`, `I2(<m>)` and `A1~` for affine `Ã₁`.
pub fn builtin_matrix(name: &str) -> Option<CoxeterMatrix> {
    if name == "A1~" {
        return Some(CoxeterMatrix::affine_a1());
    }
    if let Some(m) = name.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
        return m.parse().ok().filter(|m| [2, 3, 4, 6].contains(m)).map(CoxeterMatrix::dihedral);
    }
    let rank: usize = name.get(1..)?.parse().ok().filter(|&n| (1..=8).contains(&n))?;
    match &name[..1] {
        "A" => Some(CoxeterMatrix::type_a(rank)),
        "B" if rank >= 2 => Some(CoxeterMatrix::type_b(rank)),
        _ => None,
    }
}

/// A system together with its polynomial engine and enumerated elements.
#[derive(Clone)]
pub struct SystemCtx {
    pub name: String,
    pub sys: CoxeterSystem,
    pub engine: KlEngine,
    /// ShortLex order.
    pub elements: Vec<Element>,
}

impl SystemCtx {
    /// Enumerates all elements when `max_elt_length` is `None` (finite
    /// systems only), otherwise those of length at most the bound.
    pub fn new(
        name: &str,
        matrix: CoxeterMatrix,
        max_elt_length: Option<usize>,
    ) -> Result<Self, CoxeterError> {
        let sys = CoxeterSystem::new(matrix);
        let mut elements = match max_elt_length {
            Some(m) => sys.elements_up_to_length(m),
            None => sys.enumerate_finite(FINITE_CAP)?,
        };
        elements.sort();
        Ok(Self {
            name: name.to_string(),
            engine: KlEngine::new(&sys),
            sys,
            elements,
        })
    }

    pub fn builtin(name: &str, max_elt_length: Option<usize>) -> Option<Self> {
        Self::new(name, builtin_matrix(name)?, max_elt_length).ok()
    }

    /// All pairs `u ≤ v` with `v` enumerated and `ℓ(u,v) ≤ max_length`,
    /// in ShortLex order on `(v, u)`.
    pub fn intervals(&self, max_length: Option<usize>) -> Vec<(Element, Element)> {
        let mut pairs: Vec<(Element, Element)> = self
            .elements
            .par_iter()
            .flat_map_iter(|v| {
                let lower = self.engine.lower_set(v);
                lower
                    .iter()
                    .filter(|u| max_length.is_none_or(|m| v.length() - u.length() <= m))
                    .map(|u| (u.clone(), v.clone()))
                    .collect::<Vec<_>>()
            })
            .collect();
        pairs.sort_by(|a, b| (&a.1, &a.0).cmp(&(&b.1, &b.0)));
        pairs
    }

    pub fn parse(&self, word: &str) -> Result<Element, CoxeterError> {
        self.sys.parse_word(word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins() {
        assert_eq!(builtin_matrix("A3").unwrap().rank(), 3);
        assert_eq!(builtin_matrix("B3").unwrap(), CoxeterMatrix::type_b(3));
        assert_eq!(builtin_matrix("A1~").unwrap(), CoxeterMatrix::affine_a1());
        assert_eq!(builtin_matrix("I2(6)").unwrap(), CoxeterMatrix::dihedral(6));
        assert!(builtin_matrix("B1").is_none());
        assert!(builtin_matrix("I2(5)").is_none());
        assert!(builtin_matrix("X").is_none());
    }

    #[test]
    fn interval_counts() {
        let a2 = SystemCtx::builtin("A2", None).unwrap();
        assert_eq!(a2.elements.len(), 6);
        // 6 trivial, 6 + 1 ... comparable pairs in S3: 19
        assert_eq!(a2.intervals(None).len(), 19);
        assert_eq!(a2.intervals(Some(0)).len(), 6);
        let a3 = SystemCtx::builtin("A3", None).unwrap();
        assert_eq!(a3.elements.len(), 24);
        let affine = SystemCtx::builtin("A1~", Some(3)).unwrap();
        assert_eq!(affine.elements.len(), 7);
    }
}
