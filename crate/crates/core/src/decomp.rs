//! Boij-Söderberg decomposition by greedy peeling.
//!
//! At each step the leading degree sequence (the minimal degree in every
//! column) is read off the table, the largest multiple of its pure diagram
//! that keeps the table nonnegative is subtracted, and the process repeats
//! until nothing is left. The resulting chain is checked afterwards.

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::diagram::{deg_seq_leq, pure_diagram, BettiTable, DegreeSequence};
use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coefficient: Rational,
    pub degrees: DegreeSequence,
}

/// A positive combination of pure diagrams whose types form a strictly
/// increasing chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    terms: Vec<Term>,
}

impl Decomposition {
    /// Validates positivity of the coefficients and the chain condition.
    pub fn new(terms: Vec<Term>) -> Result<Self> {
        if let Some(t) = terms.iter().find(|t| t.coefficient <= Rational::zero()) {
            return Err(Error::domain(alloc::format!(
                "coefficient of {} is not positive",
                t.degrees
            )));
        }
        check_chain(&terms)?;
        Ok(Decomposition { terms })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `sum_k c_k * pi_{d^k}`.
    pub fn reconstruct(&self) -> BettiTable {
        self.terms.iter().fold(BettiTable::new(), |acc, t| {
            let scaled = pure_diagram(&t.degrees)
                .scale(&t.coefficient)
                .expect("coefficients are positive");
            acc.add(&scaled)
        })
    }

    pub fn coefficient_sum(&self) -> Rational {
        self.terms.iter().map(|t| &t.coefficient).sum()
    }

    /// Checks that every type has between `codim + 1` and `pdim + 1`
    /// degrees, where `pdim` is the largest length occurring.
    pub fn check_lengths(&self, codim: usize, pdim: usize) -> Result<()> {
        for t in &self.terms {
            let len = t.degrees.len();
            if len < codim + 1 || len > pdim + 1 {
                return Err(Error::domain(alloc::format!(
                    "type {} has {len} degrees, outside [{}, {}]",
                    t.degrees,
                    codim + 1,
                    pdim + 1
                )));
            }
        }
        Ok(())
    }
}

fn check_chain(terms: &[Term]) -> Result<()> {
    for (k, w) in terms.windows(2).enumerate() {
        let (a, b) = (&w[0].degrees, &w[1].degrees);
        if a == b || !deg_seq_leq(a, b) {
            return Err(Error::ChainViolation { position: k + 1 });
        }
    }
    Ok(())
}

/// `d_i = min { j : t[i, j] != 0 }` for every column up to `pdim(t)`.
pub fn leading_degree_sequence(t: &BettiTable) -> Result<DegreeSequence> {
    let pdim = t
        .pdim()
        .ok_or_else(|| Error::domain("the table is empty"))?;
    let mut degrees = Vec::with_capacity(pdim + 1);
    for i in 0..=pdim {
        let (j, _) = t.column(i).next().ok_or(Error::GapColumn { column: i })?;
        degrees.push(j);
    }
    DegreeSequence::new(degrees)
}

/// Subtracts the largest multiple `c` of `pi_d` that keeps `t` nonnegative,
/// returning `c` and the remainder.
pub fn peel(t: &BettiTable, d: &DegreeSequence) -> Result<(Rational, BettiTable)> {
    let pure = pure_diagram(d);
    let mut coefficient: Option<Rational> = None;
    for (i, &di) in d.degrees().iter().enumerate() {
        let have = t.get(i, di).ok_or_else(|| {
            Error::domain(alloc::format!("table has no entry at ({i}, {di})"))
        })?;
        let ratio = have / pure.get(i, di).expect("pure diagram is supported on d");
        coefficient = match coefficient {
            Some(c) if c <= ratio => Some(c),
            _ => Some(ratio),
        };
    }
    let c = coefficient.expect("degree sequences are nonempty");
    let remainder = t.sub(&pure.scale(&c)?)?;
    Ok((c, remainder))
}

/// Decomposes `t` into its Boij-Söderberg chain.
///
/// Failures of the greedy loop (a gap column, non-increasing minimal degrees,
/// a negative remainder or a broken chain) are reported as
/// [`Error::NotInBsCone`].
pub fn decompose(t: &BettiTable) -> Result<Decomposition> {
    if t.is_empty() {
        return Err(Error::domain("cannot decompose an empty table"));
    }
    let wrap = |e: Error| Error::NotInBsCone(Box::new(e));
    let mut terms = Vec::new();
    let mut rest = t.clone();
    // Every peel clears at least one entry of the support.
    let max_steps = t.len();
    while !rest.is_empty() {
        if terms.len() == max_steps {
            return Err(Error::domain("peeling did not terminate"));
        }
        let d = leading_degree_sequence(&rest).map_err(wrap)?;
        let (coefficient, remainder) = peel(&rest, &d).map_err(wrap)?;
        terms.push(Term { coefficient, degrees: d });
        rest = remainder;
    }
    check_chain(&terms).map_err(wrap)?;
    Ok(Decomposition { terms })
}
