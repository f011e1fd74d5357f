//! Surjective morphisms from a free semigroup `A+` onto a finite semigroup.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::semigroup::{close, Element, FiniteSemigroup, DEFAULT_ELEMENT_CAP};

/// A surjective morphism `A+ -> S`, determined by the images of the
/// letters. Every element carries the shortlex-least word mapping to it.
#[derive(Clone, Debug)]
pub struct RecognizingMorphism {
    alphabet: Vec<char>,
    semigroup: FiniteSemigroup,
    letter_images: Vec<Element>,
    witnesses: Vec<Vec<usize>>,
}

impl RecognizingMorphism {
    /// Assembles a morphism from an explicit semigroup and letter map.
    /// Fails if the letters do not generate the whole semigroup.
    pub fn new(
        semigroup: FiniteSemigroup,
        alphabet: Vec<char>,
        letter_images: Vec<Element>,
    ) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::InvalidSemigroup("empty alphabet".into()));
        }
        if alphabet.len() != letter_images.len() {
            return Err(Error::InvalidSemigroup(
                "alphabet and letter images differ in length".into(),
            ));
        }
        let distinct: BTreeSet<_> = alphabet.iter().collect();
        if distinct.len() != alphabet.len() {
            return Err(Error::InvalidSemigroup("repeated letter".into()));
        }
        if letter_images.iter().any(|&x| x as usize >= semigroup.size()) {
            return Err(Error::InvalidSemigroup("letter image out of range".into()));
        }
        let c = close(
            &letter_images,
            |&x, &y| semigroup.mul(x, y),
            semigroup.size(),
        )?;
        if c.elements.len() != semigroup.size() {
            return Err(Error::InvalidSemigroup(format!(
                "letters generate {} of {} elements",
                c.elements.len(),
                semigroup.size()
            )));
        }
        let mut witnesses = vec![Vec::new(); semigroup.size()];
        for (e, w) in c.elements.iter().zip(c.witnesses) {
            witnesses[*e as usize] = w;
        }
        Ok(RecognizingMorphism {
            alphabet,
            semigroup,
            letter_images,
            witnesses,
        })
    }

    /// Restricts to the subsemigroup generated by the letters and
    /// renumbers it, so the result is surjective.
    pub fn onto_image(
        semigroup: &FiniteSemigroup,
        alphabet: Vec<char>,
        letter_images: Vec<Element>,
    ) -> Result<(Self, Vec<Element>)> {
        let c = close(
            &letter_images,
            |&x, &y| semigroup.mul(x, y),
            semigroup.size(),
        )?;
        let m = RecognizingMorphism {
            alphabet,
            letter_images: c.generator_ids,
            semigroup: c.semigroup,
            witnesses: c.witnesses,
        };
        Ok((m, c.elements))
    }

    /// Builds the morphism by closing arbitrary generator values under
    /// an associative product. Returns the morphism and the value behind
    /// each element id.
    pub fn generate<E, F>(
        alphabet: Vec<char>,
        generators: &[E],
        mul: F,
        cap: Option<usize>,
    ) -> Result<(Self, Vec<E>)>
    where
        E: Clone + Eq + std::hash::Hash,
        F: Fn(&E, &E) -> E,
    {
        if alphabet.len() != generators.len() {
            return Err(Error::InvalidSemigroup(
                "alphabet and generators differ in length".into(),
            ));
        }
        let c = close(generators, mul, cap.unwrap_or(DEFAULT_ELEMENT_CAP))?;
        let m = RecognizingMorphism {
            alphabet,
            letter_images: c.generator_ids,
            semigroup: c.semigroup,
            witnesses: c.witnesses,
        };
        Ok((m, c.elements))
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.semigroup
    }

    pub fn letter_images(&self) -> &[Element] {
        &self.letter_images
    }

    pub fn letter_index(&self, c: char) -> Option<usize> {
        self.alphabet.iter().position(|&a| a == c)
    }

    pub fn letter_image(&self, c: char) -> Option<Element> {
        self.letter_index(c).map(|i| self.letter_images[i])
    }

    /// Image of a nonempty word of letter indices.
    pub fn image(&self, word: &[usize]) -> Option<Element> {
        let (&first, rest) = word.split_first()?;
        Some(rest.iter().fold(self.letter_images[first], |acc, &i| {
            self.semigroup.mul(acc, self.letter_images[i])
        }))
    }

    /// Image of a nonempty string. `None` on the empty word or a letter
    /// outside the alphabet.
    pub fn image_str(&self, word: &str) -> Option<Element> {
        let idx: Option<Vec<usize>> = word.chars().map(|c| self.letter_index(c)).collect();
        self.image(&idx?)
    }

    /// Shortlex-least word (as letter indices) mapping to `s`.
    pub fn witness(&self, s: Element) -> &[usize] {
        &self.witnesses[s as usize]
    }

    pub fn witness_word(&self, s: Element) -> String {
        self.witness(s)
            .iter()
            .map(|&i| self.alphabet[i])
            .collect()
    }

    /// Morphism onto the image of `w ↦ (self(w), other(w))`, with the pair
    /// of component elements behind each id.
    pub fn pair(&self, other: &RecognizingMorphism) -> Result<(Self, Vec<(Element, Element)>)> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "{:?} vs {:?}",
                self.alphabet, other.alphabet
            )));
        }
        let gens: Vec<(Element, Element)> = self
            .letter_images
            .iter()
            .zip(&other.letter_images)
            .map(|(&a, &b)| (a, b))
            .collect();
        Self::generate(
            self.alphabet.clone(),
            &gens,
            |&(a, b), &(c, d)| (self.semigroup.mul(a, c), other.semigroup.mul(b, d)),
            Some(self.semigroup.size() * other.semigroup.size()),
        )
    }

    /// The same letters acting on the opposite semigroup. A word maps to
    /// what its reversal mapped to before.
    pub fn opposite(&self) -> RecognizingMorphism {
        let semigroup = self.semigroup.opposite();
        let witnesses = crate::semigroup::close(
            &self.letter_images,
            |&x, &y| semigroup.mul(x, y),
            semigroup.size(),
        )
        .map(|c| {
            let mut ws = vec![Vec::new(); semigroup.size()];
            for (e, w) in c.elements.iter().zip(c.witnesses) {
                ws[*e as usize] = w;
            }
            ws
        })
        .expect("opposite of a surjective morphism is surjective");
        RecognizingMorphism {
            alphabet: self.alphabet.clone(),
            semigroup,
            letter_images: self.letter_images.clone(),
            witnesses,
        }
    }

    /// Elements of `S` whose preimage meets the language recognised by
    /// `accept`, decided through each element's witness.
    pub fn accepting_set(&self, accept: impl Fn(&[usize]) -> bool) -> Vec<Element> {
        self.semigroup
            .elements()
            .filter(|&s| accept(self.witness(s)))
            .collect()
    }
}
