//! Free-group words, representations, and automorphisms given by generator images.
//!
//! Text syntax: an uppercase letter is a generator (`A` is generator 0), the matching
//! lowercase letter is its inverse, and a letter may carry an integer power (`X^-1`,
//! `A^2`). Whitespace is ignored and `1` denotes the empty word. Printing always uses the
//! uppercase/lowercase form, so `parse(print(w)) == w`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::su2::{Su2, RENORM_EVERY};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: u8,
    /// +1 or -1.
    pub exp: i8,
}

impl Letter {
    pub const fn pos(gen: u8) -> Letter {
        Letter { gen, exp: 1 }
    }

    pub const fn neg(gen: u8) -> Letter {
        Letter { gen, exp: -1 }
    }

    pub fn inverse(self) -> Letter {
        Letter {
            gen: self.gen,
            exp: -self.exp,
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.exp == -other.exp
    }

    fn to_char(self) -> char {
        let c = (b'A' + self.gen) as char;
        if self.exp > 0 {
            c
        } else {
            c.to_ascii_lowercase()
        }
    }
}

/// A freely reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn gen(g: u8) -> Word {
        Word {
            letters: vec![Letter::pos(g)],
        }
    }

    /// Reduces an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            match out.last() {
                Some(&top) if top.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word { letters: out }
    }

    pub fn parse(text: &str) -> Result<Word> {
        let chars: Vec<char> = text.chars().collect();
        let mut letters = Vec::with_capacity(chars.len());
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() || c == '1' {
                i += 1;
                continue;
            }
            if !c.is_ascii_alphabetic() {
                return Err(LabError::Syntax {
                    pos: i,
                    found: c.to_string(),
                });
            }
            let gen = c.to_ascii_uppercase() as u8 - b'A';
            let exp: i8 = if c.is_ascii_uppercase() { 1 } else { -1 };
            i += 1;
            // optional integer power, `^-1`, `^2`, `^-3`
            let mut power: i64 = 1;
            if chars.get(i) == Some(&'^') {
                let start = i;
                i += 1;
                let neg = chars.get(i) == Some(&'-');
                if neg {
                    i += 1;
                }
                let digits: String = chars[i..].iter().take_while(|d| d.is_ascii_digit()).collect();
                if digits.is_empty() || digits.len() > 6 {
                    return Err(LabError::Syntax {
                        pos: start,
                        found: chars[start..(i + 1).min(chars.len())].iter().collect(),
                    });
                }
                i += digits.len();
                power = digits.parse::<i64>().expect("digits");
                if neg {
                    power = -power;
                }
            }
            let e = if power < 0 { -exp } else { exp };
            for _ in 0..power.unsigned_abs() {
                letters.push(Letter { gen, exp: e });
            }
        }
        Ok(Word::from_letters(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index used plus one.
    pub fn arity(&self) -> usize {
        self.letters
            .iter()
            .map(|l| l.gen as usize + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Concatenation followed by free reduction.
    pub fn concat(&self, other: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn pow(&self, n: i32) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Strips matching first/last letters until the word is cyclically reduced.
    pub fn cyclic_reduce(&self) -> Word {
        let l = &self.letters;
        let (mut i, mut j) = (0, l.len());
        while j >= i + 2 && l[i].cancels(l[j - 1]) {
            i += 1;
            j -= 1;
        }
        Word {
            letters: l[i..j].to_vec(),
        }
    }

    /// Cyclic rotation by `k` letters to the left.
    pub fn rotate(&self, k: usize) -> Word {
        let mut v = self.letters.clone();
        if !v.is_empty() {
            let n = v.len();
            v.rotate_left(k % n);
        }
        Word { letters: v }
    }

    /// Conjugacy in the free group: cyclic reductions agree up to rotation.
    pub fn is_conjugate(&self, other: &Word) -> bool {
        let (p, q) = (self.cyclic_reduce(), other.cyclic_reduce());
        p.len() == q.len() && (p.is_empty() || (0..p.len()).any(|k| p.rotate(k) == q))
    }

    /// `g w g^-1`.
    pub fn conj_by(&self, g: &Word) -> Word {
        g.concat(self).concat(&g.inverse())
    }

    /// Evaluates the ordered product of generator images.
    pub fn evaluate(&self, rho: &Representation) -> Result<Su2> {
        let mut acc = Su2::IDENTITY;
        for (i, l) in self.letters.iter().enumerate() {
            let g = rho.gens.get(l.gen as usize).ok_or(LabError::Arity {
                index: l.gen as usize,
                arity: rho.gens.len(),
            })?;
            acc = if l.exp > 0 {
                acc.mul_raw(g)
            } else {
                acc.mul_raw(&g.inv())
            };
            if (i + 1) % RENORM_EVERY == 0 {
                acc = acc.normalized();
            }
        }
        Ok(acc.normalized())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Word {
    type Err = LabError;
    fn from_str(s: &str) -> Result<Word> {
        Word::parse(s)
    }
}

/// Parses a word known to be valid; for constants.
pub fn w(text: &str) -> Word {
    Word::parse(text).expect("valid word literal")
}

/// A homomorphism from the free group, one SU(2) element per generator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Representation {
    pub gens: Vec<Su2>,
}

impl Representation {
    pub fn new(gens: Vec<Su2>) -> Representation {
        Representation { gens }
    }

    pub fn identity(k: usize) -> Representation {
        Representation {
            gens: vec![Su2::IDENTITY; k],
        }
    }

    pub fn haar<R: rand::Rng + ?Sized>(k: usize, rng: &mut R) -> Representation {
        Representation {
            gens: (0..k).map(|_| Su2::haar(rng)).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.gens.len()
    }
}

/// An endomorphism of the free group on three generators, with supplied inverse images.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EndoF3 {
    pub name: String,
    pub images: [Word; 3],
    pub inverse_images: [Word; 3],
}

impl EndoF3 {
    /// Builds the endomorphism and checks both compositions return the generators.
    pub fn new(name: &str, images: [Word; 3], inverse_images: [Word; 3]) -> Result<EndoF3> {
        let e = EndoF3 {
            name: name.to_string(),
            images,
            inverse_images,
        };
        if !e.is_certified() {
            return Err(LabError::NotAutomorphism {
                name: name.to_string(),
            });
        }
        Ok(e)
    }

    pub fn identity() -> EndoF3 {
        let g = [Word::gen(0), Word::gen(1), Word::gen(2)];
        EndoF3 {
            name: "id".into(),
            images: g.clone(),
            inverse_images: g,
        }
    }

    pub fn is_certified(&self) -> bool {
        (0..3u8).all(|g| {
            let x = Word::gen(g);
            substitute(&self.images, &substitute(&self.inverse_images, &x)) == x
                && substitute(&self.inverse_images, &substitute(&self.images, &x)) == x
        })
    }

    pub fn apply(&self, word: &Word) -> Word {
        substitute(&self.images, word)
    }

    pub fn inverse(&self) -> EndoF3 {
        EndoF3 {
            name: format!("{}^-1", self.name),
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
        }
    }

    /// The pulled-back representation `rho o phi`, so that
    /// `evaluate(w, phi*(rho)) == evaluate(phi(w), rho)`.
    pub fn pullback(&self, rho: &Representation) -> Result<Representation> {
        let gens = self
            .images
            .iter()
            .map(|img| img.evaluate(rho))
            .collect::<Result<Vec<_>>>()?;
        Ok(Representation { gens })
    }
}

fn substitute(images: &[Word], word: &Word) -> Word {
    Word::from_letters(word.letters().iter().flat_map(|l| {
        let img = &images[l.gen as usize];
        let v: Vec<Letter> = if l.exp > 0 {
            img.letters().to_vec()
        } else {
            img.inverse().letters().to_vec()
        };
        v
    }))
}

/// The three bounded surfaces studied here, each with free fundamental group of rank 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Surface {
    /// Two crosscaps, two boundary circles; presentation `A^2 B^2 C K^-1`.
    N22,
    /// One crosscap, three boundary circles; presentation `A^2 B C K^-1`.
    N13,
    /// Three crosscaps, one boundary circle; presentation `A^2 B^2 C^2 K^-1`.
    N31,
}

impl Surface {
    pub const ALL: [Surface; 3] = [Surface::N22, Surface::N13, Surface::N31];

    pub fn name(self) -> &'static str {
        match self {
            Surface::N22 => "N22",
            Surface::N13 => "N13",
            Surface::N31 => "N31",
        }
    }

    pub fn parse(s: &str) -> Result<Surface> {
        match s {
            "N22" => Ok(Surface::N22),
            "N13" => Ok(Surface::N13),
            "N31" => Ok(Surface::N31),
            _ => Err(LabError::Invalid(format!("unknown surface {s}"))),
        }
    }

    /// Boundary words, the last being `K`.
    pub fn boundary_words(self) -> Vec<Word> {
        match self {
            Surface::N22 => vec![w("C"), w("AABBC")],
            Surface::N13 => vec![w("B"), w("C"), w("AABC")],
            Surface::N31 => vec![w("AABBCC")],
        }
    }

    pub fn twists(self) -> Vec<Twist> {
        Twist::ALL
            .into_iter()
            .filter(|t| t.surface() == self)
            .collect()
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The five built-in Dehn twists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Twist {
    /// N22, about `U = B^2 C`.
    N22U,
    /// N13, about `T = A^2 B`.
    N13T,
    /// N13, about `U = C A^2`.
    N13U,
    /// N13, about `W = C A B^-1 A^-1`.
    N13W,
    /// N31, about `U = A^2 C^2`.
    N31U,
}

impl Twist {
    pub const ALL: [Twist; 5] = [
        Twist::N22U,
        Twist::N13T,
        Twist::N13U,
        Twist::N13W,
        Twist::N31U,
    ];

    pub fn surface(self) -> Surface {
        match self {
            Twist::N22U => Surface::N22,
            Twist::N13T | Twist::N13U | Twist::N13W => Surface::N13,
            Twist::N31U => Surface::N31,
        }
    }

    /// Short name within its surface.
    pub fn short(self) -> &'static str {
        match self {
            Twist::N13T => "T",
            Twist::N13W => "W",
            _ => "U",
        }
    }

    pub fn label(self) -> String {
        format!("{}.{}", self.surface().name(), self.short())
    }

    pub fn lookup(surface: Surface, short: &str) -> Result<Twist> {
        surface
            .twists()
            .into_iter()
            .find(|t| t.short() == short)
            .ok_or_else(|| LabError::Domain {
                surface: surface.name().into(),
                twist: short.into(),
            })
    }

    /// The curve twisted about.
    pub fn curve(self) -> Word {
        match self {
            Twist::N22U => w("BBC"),
            Twist::N13T => w("AAB"),
            Twist::N13U => w("CAA"),
            Twist::N13W => w("CAba"),
            Twist::N31U => w("AACC"),
        }
    }

    pub fn endo(self) -> EndoF3 {
        let (img, inv): ([&str; 3], [&str; 3]) = match self {
            Twist::N22U => (["A", "BBCBcbb", "BBCbb"], ["A", "cBC", "cbbCBBC"]),
            Twist::N13T => (["AABAbaa", "AABaa", "C"], ["bAB", "baaBAAB", "C"]),
            Twist::N13U => (["CAc", "B", "CAACaac"], ["aacACAA", "B", "aaCAA"]),
            Twist::N13W => (
                ["CAbacAB", "baCABacAB", "CAbaCABac"],
                ["ABacAbaCA", "acABaCA", "ABaCAba"],
            ),
            Twist::N31U => (["A", "aaccBCCAA", "C"], ["A", "CCAABaacc", "C"]),
        };
        EndoF3::new(&self.label(), img.map(w), inv.map(w)).expect("built-in twist is an automorphism")
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Named automorphisms for a surface.
pub fn builtin_twists(surface: Surface) -> Vec<(Twist, EndoF3)> {
    surface.twists().into_iter().map(|t| (t, t.endo())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parse_reduces_and_round_trips() {
        let x = w("ABa");
        assert_eq!(x.len(), 3);
        assert_eq!(x.letters()[2], Letter::neg(0));
        assert!(w("Aa").is_empty());
        assert_eq!(w("A^-1B"), w("aB"));
        assert_eq!(w("AB^-1 A"), w("AbA"));
        assert_eq!(w("AABBC").to_string(), "AABBC");
        assert_eq!(w("1").to_string(), "1");
        assert!(Word::parse("AB?").is_err());
        assert!(Word::parse("A^").is_err());
        assert_eq!(Word::parse("A^2 B^-2 c^0").unwrap(), w("AAbb"));
        assert_eq!(Word::parse("a^-3").unwrap(), w("AAA"));
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(Twist::N13T.endo().apply(&w("AB")), w("AABa"));
        assert_eq!(Twist::N22U.endo().apply(&w("AABBC")), w("AABBC"));
        assert_eq!(EndoF3::identity().apply(&w("AbCa")), w("AbCa"));
    }

    #[test]
    fn builtins_are_certified_and_verbatim() {
        for t in Twist::ALL {
            assert!(t.endo().is_certified(), "{t}");
        }
        let n13: Vec<_> = builtin_twists(Surface::N13).iter().map(|p| p.0.short()).collect();
        assert_eq!(n13, ["T", "U", "W"]);
        // N22 images as displayed: B -> B B C B C^-1 B^-1 B^-1, C -> B B C B^-1 B^-1
        let e = Twist::N22U.endo();
        assert_eq!(e.images[1], w("BBCBC^-1B^-1B^-1"));
        assert_eq!(e.images[2], w("BBCB^-1B^-1"));
        // N31 images: B -> A^-2 C^-2 B C^2 A^2
        assert_eq!(Twist::N31U.endo().images[1], w("A^-1A^-1C^-1C^-1BCCAA"));
    }

    #[test]
    fn twists_fix_their_curve_and_boundary() {
        for t in Twist::ALL {
            let e = t.endo();
            assert_eq!(e.apply(&t.curve()), t.curve(), "{t}");
            for b in t.surface().boundary_words() {
                assert!(e.apply(&b).is_conjugate(&b), "{t} on {b}");
            }
        }
    }

    #[test]
    fn cyclic_reduction_and_conjugacy() {
        assert_eq!(w("aBCA").cyclic_reduce(), w("BC"));
        assert_eq!(w("AabA").cyclic_reduce(), w("bA"));
        assert!(w("ABC").is_conjugate(&w("bCABB")));
        assert!(!w("ABC").is_conjugate(&w("ACB")));
    }

    #[test]
    fn corrupted_inverse_is_rejected() {
        let r = EndoF3::new("bad", [w("A"), w("AB"), w("C")], [w("A"), w("B"), w("C")]);
        assert!(r.is_err());
    }

    #[test]
    fn evaluate_checks_arity() {
        let rho = Representation::identity(2);
        assert!(w("C").evaluate(&rho).is_err());
        assert_eq!(w("AbAB").evaluate(&rho).unwrap().q, Su2::IDENTITY.q);
    }

    #[test]
    fn pullback_commutes_with_substitution() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let word = w("AbCCaBcAB");
        for t in Twist::ALL {
            let e = t.endo();
            let rho = Representation::haar(3, &mut rng);
            let lhs = e.apply(&word).evaluate(&rho).unwrap();
            let rhs = word.evaluate(&e.pullback(&rho).unwrap()).unwrap();
            assert!(lhs.max_diff(&rhs) < 1e-10);
        }
    }
}
