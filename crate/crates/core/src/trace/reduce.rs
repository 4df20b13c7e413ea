//! Reduction of `tr rho(W)` to a polynomial in `a b c x y z d`.
//!
//! Rules, applied to a canonical cyclic representative:
//! 1. a word with an inverse letter is rotated to `P g^-1` and expanded by
//!    `tr(P g^-1) = tr(P) tr(g) - tr(P g)`;
//! 2. a positive word with a repeated letter is rotated to `g U g V` and expanded by
//!    `tr(gU gV) = tr(gU) tr(gV) - tr(U V^-1)`;
//! 3. what remains has distinct positive letters and is a base coordinate, or `ACB`,
//!    which is `ay + bz + cx - abc - d`.
//!
//! Rule 1 lowers the inverse count without raising the length and rule 2 lowers the
//! length, so the recursion terminates. Results are memoized on the canonical word.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::poly::Poly;
use crate::error::{LabError, Result};
use crate::word::{Letter, Word};

/// Thread-safe memo of reduced traces.
#[derive(Debug, Default)]
pub struct TraceReducer {
    memo: RwLock<HashMap<Word, Arc<Poly>>>,
}

/// Canonical cyclic representative: cyclically reduced, inverted if that leaves fewer
/// inverse letters (traces in SU(2) are inversion invariant), then the least rotation.
pub fn canonical(word: &Word) -> Word {
    let w = word.cyclic_reduce();
    let neg = w.letters().iter().filter(|l| l.exp < 0).count();
    let pos = w.len() - neg;
    let best = |v: &Word| (0..v.len().max(1)).map(|k| v.rotate(k)).min().unwrap_or_default();
    match neg.cmp(&pos) {
        std::cmp::Ordering::Less => best(&w),
        std::cmp::Ordering::Greater => best(&w.inverse()),
        std::cmp::Ordering::Equal => best(&w).min(best(&w.inverse())),
    }
}

fn base_case(w: &Word) -> Option<Poly> {
    let s = w.to_string();
    let p = match s.as_str() {
        "1" => Poly::constant(2),
        "A" => Poly::var(0),
        "B" => Poly::var(1),
        "C" => Poly::var(2),
        "AB" => Poly::var(3),
        "BC" => Poly::var(4),
        "AC" => Poly::var(5),
        "ABC" => Poly::var(6),
        "ACB" => Poly::parse("a*y + b*z + c*x - a*b*c - d").expect("literal"),
        _ => return None,
    };
    Some(p)
}

impl TraceReducer {
    pub fn new() -> TraceReducer {
        TraceReducer::default()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    pub fn trace_of_word(&self, word: &Word) -> Result<Arc<Poly>> {
        if word.arity() > 3 {
            return Err(LabError::Arity {
                index: word.arity() - 1,
                arity: 3,
            });
        }
        let key = canonical(word);
        if let Some(p) = self.memo.read().expect("memo lock").get(&key) {
            return Ok(p.clone());
        }
        let p = Arc::new(self.reduce(&key)?);
        self.memo
            .write()
            .expect("memo lock")
            .entry(key)
            .or_insert_with(|| p.clone());
        Ok(p)
    }

    fn reduce(&self, w: &Word) -> Result<Poly> {
        if let Some(p) = base_case(w) {
            return Ok(p);
        }
        let ls = w.letters();
        let n = ls.len();

        if let Some(i) = ls.iter().position(|l| l.exp < 0) {
            // rotate so the inverse letter is last: P g^-1
            let r = w.rotate(i + 1);
            let g = ls[i].inverse();
            let p = Word::from_letters(r.letters()[..n - 1].iter().copied());
            let pg = p.concat(&Word::from_letters([g]));
            let tp = self.trace_of_word(&p)?;
            let tg = self.trace_of_word(&Word::from_letters([g]))?;
            let tpg = self.trace_of_word(&pg)?;
            return tp.mul(&tg)?.sub(&tpg);
        }

        let (i, j) = first_repeat(ls).expect("positive non-base word repeats a letter");
        // g U g V with g at i and j
        let r = w.rotate(i);
        let j = j - i;
        let rl = r.letters();
        let gu = Word::from_letters(rl[..j].iter().copied());
        let gv = Word::from_letters(rl[j..].iter().copied());
        let u = Word::from_letters(rl[1..j].iter().copied());
        let v = Word::from_letters(rl[j + 1..].iter().copied());
        let t1 = self.trace_of_word(&gu)?;
        let t2 = self.trace_of_word(&gv)?;
        let t3 = self.trace_of_word(&u.concat(&v.inverse()))?;
        t1.mul(&t2)?.sub(&t3)
    }
}

fn first_repeat(ls: &[Letter]) -> Option<(usize, usize)> {
    for j in 0..ls.len() {
        if let Some(i) = ls[..j].iter().position(|l| l.gen == ls[j].gen) {
            return Some((i, j));
        }
    }
    None
}

/// Process-wide reducer shared by [`trace_of_word`].
pub fn global() -> &'static TraceReducer {
    static R: OnceLock<TraceReducer> = OnceLock::new();
    R.get_or_init(TraceReducer::new)
}

/// Trace polynomial of a word in `A, B, C`, using the shared memo.
pub fn trace_of_word(word: &Word) -> Result<Arc<Poly>> {
    global().trace_of_word(word)
}
