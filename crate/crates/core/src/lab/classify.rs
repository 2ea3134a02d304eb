use std::fmt;

use crate::game::{GameVariant, Inequality, Rel, VariantError};
use crate::scalar::Scalar;

/// Clauses of the indeterminacy theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Clause {
    I,
    II,
    III,
    IV,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::I => "i",
            Clause::II => "ii",
            Clause::III => "iii",
            Clause::IV => "iv",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    UndeterminedOnBernstein(Clause),
    DeterminedForAllS,
    Unclassified,
}

impl Label {
    /// Two labels conflict when one says undetermined and the other determined.
    pub fn conflicts_with(self, other: Label) -> bool {
        matches!(
            (self, other),
            (Label::UndeterminedOnBernstein(_), Label::DeterminedForAllS)
                | (Label::DeterminedForAllS, Label::UndeterminedOnBernstein(_))
        )
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::UndeterminedOnBernstein(c) => write!(f, "UndeterminedOnBernstein({c})"),
            Label::DeterminedForAllS => f.write_str("DeterminedForAllS"),
            Label::Unclassified => f.write_str("Unclassified"),
        }
    }
}

/// The label chosen for a parameter set, with the exact inequalities that
/// justify it. `applicable` lists every label whose hypotheses hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegimeLabel {
    pub variant: GameVariant,
    pub c: Scalar,
    pub banach: bool,
    pub label: Label,
    pub clause: &'static str,
    pub certificate: Vec<Inequality>,
    pub applicable: Vec<Label>,
}

impl RegimeLabel {
    /// Re-evaluates the certificate.
    pub fn verify(&self) -> bool {
        !self.certificate.is_empty() && self.certificate.iter().all(Inequality::holds)
    }

    pub fn certificate_text(&self) -> String {
        let lines: Vec<String> = self.certificate.iter().map(|i| i.to_string()).collect();
        lines.join("; ")
    }
}

fn ineq(label: &'static str, lhs: Scalar, rel: Rel, rhs: Scalar) -> Inequality {
    Inequality {
        label,
        lhs_text: lhs.to_string(),
        lhs,
        rel,
        rhs_text: rhs.to_string(),
        rhs,
    }
}

/// Compares `lhs` with `rhs`, recording whichever of `<` / `>=` holds.
fn lt(label: &'static str, lhs: &Scalar, rhs: &Scalar) -> (bool, Inequality) {
    let holds = lhs < rhs;
    let rel = if holds { Rel::Lt } else { Rel::Ge };
    (holds, ineq(label, lhs.clone(), rel, rhs.clone()))
}

const CLAUSE_I: &str = "alpha, beta < c/(1+2c)";
const CLAUSE_II: &str = "Banach and 1 + alpha beta > 2 max(alpha, beta)";
const CLAUSE_III: &str = "beta < (c/5)^2";
const CLAUSE_IV: &str = "Banach and beta < 1/3";
const DETERMINED: &str = "Banach and 1 + alpha beta <= 2 max(alpha, beta)";

/// Picks the strongest applicable label.
///
/// Schmidt and strong games: determined when Banach and
/// `1 + αβ <= 2max(α,β)`; otherwise clause (i), then (ii). Absolute games:
/// clause (iii), then (iv). Clauses with an implemented strategy are
/// preferred when several hold.
pub fn classify_parameters(variant: &GameVariant, c: &Scalar, banach: bool) -> Result<RegimeLabel, VariantError> {
    let unit = |name: &'static str, v: &Scalar| {
        if v.is_positive() && *v < Scalar::one() {
            Ok(())
        } else {
            Err(VariantError::OutOfRange { name, value: v.clone() })
        }
    };
    unit("c", c)?;
    let beta = variant.beta();
    unit("beta", beta)?;
    let mut applicable = Vec::new();
    let (label, clause, certificate) = match variant.alpha() {
        Some(alpha) => {
            unit("alpha", alpha)?;
            let two = Scalar::from_int(2);
            let bound = c / (Scalar::one() + &two * c);
            let (ai, a_cert) = lt("alpha < c/(1+2c)", alpha, &bound);
            let (bi, b_cert) = lt("beta < c/(1+2c)", beta, &bound);
            let lhs = Scalar::one() + alpha * beta;
            let rhs = &two * alpha.clone().max(beta.clone());
            let nondeg = lhs > rhs;
            let ii_cert = if nondeg {
                ineq("1+alpha*beta > 2max(alpha,beta)", lhs, Rel::Gt, rhs)
            } else {
                ineq("1+alpha*beta <= 2max(alpha,beta)", lhs, Rel::Le, rhs)
            };
            if ai && bi {
                applicable.push(Label::UndeterminedOnBernstein(Clause::I));
            }
            if banach && nondeg {
                applicable.push(Label::UndeterminedOnBernstein(Clause::II));
            }
            if banach && !nondeg {
                applicable.push(Label::DeterminedForAllS);
            }
            if banach && !nondeg {
                (Label::DeterminedForAllS, DETERMINED, vec![ii_cert])
            } else if ai && bi {
                (Label::UndeterminedOnBernstein(Clause::I), CLAUSE_I, vec![a_cert, b_cert])
            } else if banach {
                (Label::UndeterminedOnBernstein(Clause::II), CLAUSE_II, vec![ii_cert])
            } else {
                let failed: Vec<Inequality> = [(ai, a_cert), (bi, b_cert)]
                    .into_iter()
                    .filter(|(ok, _)| !ok)
                    .map(|(_, i)| i)
                    .collect();
                (Label::Unclassified, CLAUSE_I, failed)
            }
        }
        None => {
            let fifth = c / Scalar::from_int(5);
            let playable = *beta < fifth || (banach && *beta < Scalar::new(1, 3));
            if !playable {
                return Err(VariantError::NotPlayable {
                    beta: beta.clone(),
                    bound: fifth,
                });
            }
            let (iii, iii_cert) = lt("beta < (c/5)^2", beta, &fifth.pow(2));
            let (iv, iv_cert) = lt("beta < 1/3", beta, &Scalar::new(1, 3));
            if iii {
                applicable.push(Label::UndeterminedOnBernstein(Clause::III));
            }
            if banach && iv {
                applicable.push(Label::UndeterminedOnBernstein(Clause::IV));
            }
            if iii {
                (Label::UndeterminedOnBernstein(Clause::III), CLAUSE_III, vec![iii_cert])
            } else if banach && iv {
                (Label::UndeterminedOnBernstein(Clause::IV), CLAUSE_IV, vec![iv_cert])
            } else {
                (Label::Unclassified, CLAUSE_III, vec![iii_cert])
            }
        }
    };
    if applicable.is_empty() {
        applicable.push(Label::Unclassified);
    }
    Ok(RegimeLabel {
        variant: variant.clone(),
        c: c.clone(),
        banach,
        label,
        clause,
        certificate,
        applicable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn fixture_rows() {
        let r = classify_parameters(&GameVariant::schmidt(q(1, 5), q(1, 5)), &q(1, 2), false).unwrap();
        assert_eq!(r.label, Label::UndeterminedOnBernstein(Clause::I));
        assert_eq!(r.certificate_text(), "alpha < c/(1+2c): 1/5 < 1/4; beta < c/(1+2c): 1/5 < 1/4");

        let r = classify_parameters(&GameVariant::schmidt(q(99, 100), q(1, 2)), &q(1, 2), true).unwrap();
        assert_eq!(r.label, Label::DeterminedForAllS);
        assert_eq!(r.certificate[0].lhs, q(299, 200));
        assert_eq!(r.certificate[0].rhs, q(396, 200));

        let r = classify_parameters(&GameVariant::absolute(q(1, 200)), &q(1, 2), false).unwrap();
        assert_eq!(r.label, Label::UndeterminedOnBernstein(Clause::III));
        assert_eq!(r.certificate_text(), "beta < (c/5)^2: 1/200 < 1/100");
        assert!(r.verify());
    }

    #[test]
    fn absolute_not_playable() {
        let r = classify_parameters(&GameVariant::absolute(q(1, 5)), &q(1, 2), false);
        assert!(matches!(r, Err(VariantError::NotPlayable { .. })));
        let r = classify_parameters(&GameVariant::absolute(q(1, 5)), &q(1, 2), true).unwrap();
        assert_eq!(r.label, Label::UndeterminedOnBernstein(Clause::IV));
    }

    #[test]
    fn banach_prefers_clause_one() {
        let r = classify_parameters(&GameVariant::strong(q(1, 5), q(1, 5)), &q(1, 2), true).unwrap();
        assert_eq!(r.label, Label::UndeterminedOnBernstein(Clause::I));
        assert_eq!(r.applicable.len(), 2);
        let r = classify_parameters(&GameVariant::schmidt(q(1, 2), q(1, 2)), &q(1, 2), true).unwrap();
        assert_eq!(r.label, Label::UndeterminedOnBernstein(Clause::II));
    }

    #[test]
    fn unclassified_records_the_failure() {
        let r = classify_parameters(&GameVariant::schmidt(q(1, 5), q(1, 2)), &q(1, 2), false).unwrap();
        assert_eq!(r.label, Label::Unclassified);
        assert_eq!(r.certificate_text(), "beta < c/(1+2c): 1/2 >= 1/4");
        assert!(r.verify());
    }
}
