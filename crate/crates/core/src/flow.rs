//! Goldman circle actions attached to a two-sided circle `gamma`.
//!
//! With `zeta_t = exp(t F(rho(gamma)))`, which centralizes `rho(gamma)`:
//! - separating case: generators on the B side are conjugated by `zeta_t`;
//! - HNN case: the stable letter `beta` is left-multiplied by `zeta_t`.
//!
//! At `t = f(rho(gamma))` we have `zeta_t = rho(gamma)`, so the flow reproduces the Dehn
//! twist, which is checked here against the twist built as a word substitution.

use serde::Serialize;

use crate::error::{LabError, Result};
use crate::su2::{exp_scaled, Su2};
use crate::twist::coords_from_rep;
use crate::word::{w, EndoF3, Letter, Representation, Word};

pub const GLUING_TOL: f64 = 1e-10;

/// Free product with amalgamation over `gamma`, which lies on the A side.
#[derive(Debug, Clone)]
pub struct SeparatingDecomposition {
    pub a_side: Vec<u8>,
    pub b_side: Vec<u8>,
    pub gamma: Word,
}

impl SeparatingDecomposition {
    pub fn new(a_side: Vec<u8>, b_side: Vec<u8>, gamma: Word) -> Result<SeparatingDecomposition> {
        if gamma.letters().iter().any(|l| !a_side.contains(&l.gen)) {
            return Err(LabError::Invalid(format!("{gamma} is not on the A side")));
        }
        Ok(SeparatingDecomposition { a_side, b_side, gamma })
    }

    /// The example `A | B, C` with `gamma = A^2`.
    pub fn example() -> SeparatingDecomposition {
        SeparatingDecomposition::new(vec![0], vec![1, 2], w("AA")).expect("valid")
    }

    /// Word-level Dehn twist: B-side generators conjugated by `gamma`.
    pub fn dehn_twist(&self) -> Result<EndoF3> {
        let img = |conj: &Word| -> [Word; 3] {
            std::array::from_fn(|g| {
                let x = Word::gen(g as u8);
                if self.b_side.contains(&(g as u8)) {
                    x.conj_by(conj)
                } else {
                    x
                }
            })
        };
        EndoF3::new(
            &format!("twist[{}]", self.gamma),
            img(&self.gamma),
            img(&self.gamma.inverse()),
        )
    }
}

/// HNN extension: the A side is generated by the words `a_side` (in ambient letters), the
/// stable letter is the ambient word `beta`, and the relation is
/// `gamma_minus beta gamma_plus beta^-1 = 1`, with both attaching words written in
/// A-side letters. `ambient` expresses each ambient generator back in the letters
/// `a_side[0..n]` followed by `beta` (letter `n`).
#[derive(Debug, Clone)]
pub struct HnnDecomposition {
    pub a_side: Vec<Word>,
    pub beta: Word,
    pub gamma_minus: Word,
    pub gamma_plus: Word,
    pub ambient: Vec<Word>,
}

impl HnnDecomposition {
    /// N22 cut along `X = AB`: A side `P = AB`, `Q = B^-2 A^-1 B`, `C`; stable letter
    /// `B`; the relation `P B Q B^-1 = 1` holds identically in the free group.
    pub fn n22_along_x() -> HnnDecomposition {
        HnnDecomposition {
            a_side: vec![w("AB"), w("bbaB"), w("C")],
            beta: w("B"),
            gamma_minus: w("A"),
            gamma_plus: w("B"),
            // A = P beta^-1, B = beta, C = C, with beta as letter D
            ambient: vec![w("Ad"), w("D"), w("C")],
        }
    }

    fn n(&self) -> u8 {
        self.a_side.len() as u8
    }

    pub fn split(&self, rho: &Representation) -> Result<(Representation, Su2)> {
        let gens = self
            .a_side
            .iter()
            .map(|x| x.evaluate(rho))
            .collect::<Result<Vec<_>>>()?;
        Ok((Representation::new(gens), self.beta.evaluate(rho)?))
    }

    pub fn glue(&self, rho_a: &Representation, b: &Su2) -> Result<Representation> {
        let mut all = rho_a.gens.clone();
        all.push(*b);
        let full = Representation::new(all);
        let gens = self
            .ambient
            .iter()
            .map(|x| x.evaluate(&full))
            .collect::<Result<Vec<_>>>()?;
        Ok(Representation::new(gens))
    }

    /// A-side word rewritten in ambient letters.
    fn to_ambient(&self, x: &Word) -> Word {
        Word::from_letters(x.letters().iter().flat_map(|l| {
            let img = &self.a_side[l.gen as usize];
            let v = if l.exp > 0 { img.clone() } else { img.inverse() };
            v.letters().to_vec()
        }))
    }

    /// Word-level Dehn twist `beta -> gamma_minus beta`, pushed to the ambient generators.
    pub fn dehn_twist(&self) -> Result<EndoF3> {
        let n = self.n();
        let gm = self.to_ambient(&self.gamma_minus);
        let make = |shift: &Word| -> [Word; 3] {
            std::array::from_fn(|g| {
                Word::from_letters(self.ambient[g].letters().iter().flat_map(|l: &Letter| {
                    let img = if l.gen == n {
                        shift.concat(&self.beta)
                    } else {
                        self.a_side[l.gen as usize].clone()
                    };
                    let v = if l.exp > 0 { img } else { img.inverse() };
                    v.letters().to_vec()
                }))
            })
        };
        EndoF3::new(
            &format!("twist[{}]", self.gamma_minus),
            make(&gm),
            make(&gm.inverse()),
        )
    }
}

fn zeta(g: &Su2, t: f64) -> Result<Su2> {
    Ok(exp_scaled(&g.variation()?, t))
}

pub fn flow_separating(
    dec: &SeparatingDecomposition,
    rho: &Representation,
    t: f64,
) -> Result<Representation> {
    let z = zeta(&dec.gamma.evaluate(rho)?, t)?;
    let gens = rho
        .gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            if dec.b_side.contains(&(i as u8)) {
                g.conj_by(&z)
            } else {
                *g
            }
        })
        .collect();
    Ok(Representation::new(gens))
}

pub fn flow_hnn(dec: &HnnDecomposition, rho: &Representation, t: f64) -> Result<Representation> {
    let (rho_a, b) = dec.split(rho)?;
    let z = zeta(&dec.gamma_minus.evaluate(&rho_a)?, t)?;
    dec.glue(&rho_a, &z.mul(&b))
}

#[derive(Debug, Clone, Serialize)]
pub struct TwistFlowReport {
    /// `f(rho(gamma))`, the flow time matching the twist.
    pub time: f64,
    /// Largest trace-coordinate deviation between the two routes.
    pub max_dev: f64,
}

pub enum Decomposition<'a> {
    Separating(&'a SeparatingDecomposition),
    Hnn(&'a HnnDecomposition),
}

/// Compares the flow at time `f(rho(gamma))` with the word-level twist.
pub fn twist_equals_flow(dec: Decomposition<'_>, rho: &Representation) -> Result<TwistFlowReport> {
    let (time, flowed, twisted) = match dec {
        Decomposition::Separating(d) => {
            let time = d.gamma.evaluate(rho)?.angle();
            (time, flow_separating(d, rho, time)?, d.dehn_twist()?.pullback(rho)?)
        }
        Decomposition::Hnn(d) => {
            let (rho_a, _) = d.split(rho)?;
            let time = d.gamma_minus.evaluate(&rho_a)?.angle();
            (time, flow_hnn(d, rho, time)?, d.dehn_twist()?.pullback(rho)?)
        }
    };
    let max_dev = coords_from_rep(&flowed)?.max_diff(&coords_from_rep(&twisted)?);
    Ok(TwistFlowReport { time, max_dev })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct GluingCheck {
    /// `rho_A(gamma_minus)^-1 == b rho_A(gamma_plus) b^-1`.
    pub glued: bool,
    /// `tr rho_A(gamma_minus) == tr rho_A(gamma_plus)`, the solvability condition.
    pub solvable: bool,
}

pub fn check_gluing(dec: &HnnDecomposition, rho_a: &Representation, b: &Su2) -> Result<GluingCheck> {
    let gm = dec.gamma_minus.evaluate(rho_a)?;
    let gp = dec.gamma_plus.evaluate(rho_a)?;
    Ok(GluingCheck {
        glued: gm.inv().max_diff(&gp.conj_by(b)) < GLUING_TOL,
        solvable: (gm.trace() - gp.trace()).abs() < GLUING_TOL,
    })
}
