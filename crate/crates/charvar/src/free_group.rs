//! Reduced words in the free group `<a, b>`.

use std::fmt;

use serde::Serialize;

/// Letters are encoded as `1 = a`, `-1 = a^-1`, `2 = b`, `-2 = b^-1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct FreeWord {
    letters: Vec<i8>,
}

pub const GEN_A: i8 = 1;
pub const GEN_B: i8 = 2;

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn a() -> Self {
        FreeWord { letters: vec![GEN_A] }
    }

    pub fn b() -> Self {
        FreeWord { letters: vec![GEN_B] }
    }

    pub fn from_letters(letters: &[i8]) -> Self {
        assert!(letters.iter().all(|l| matches!(l.abs(), 1 | 2)), "letters must be ±1 or ±2");
        let mut w = FreeWord::identity();
        for &l in letters {
            w.push(l);
        }
        w
    }

    fn push(&mut self, l: i8) {
        if self.letters.last() == Some(&-l) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn letters(&self) -> &[i8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, o: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        for &l in &o.letters {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> FreeWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = FreeWord::identity();
        for _ in 0..n.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// Strip matching inverse letters from both ends.
    pub fn cyclically_reduced(&self) -> FreeWord {
        let l = &self.letters;
        let (mut i, mut j) = (0, l.len());
        while j > i + 1 && l[i] == -l[j - 1] {
            i += 1;
            j -= 1;
        }
        FreeWord {
            letters: l[i..j].to_vec(),
        }
    }

    /// Least rotation of a cyclically reduced word; a canonical key for its
    /// conjugacy class.
    pub fn canonical_cyclic(&self) -> FreeWord {
        let c = self.cyclically_reduced();
        let n = c.letters.len();
        if n == 0 {
            return c;
        }
        let best = (0..n)
            .map(|r| {
                let mut v = c.letters[r..].to_vec();
                v.extend_from_slice(&c.letters[..r]);
                v
            })
            .min()
            .unwrap();
        FreeWord { letters: best }
    }

    pub fn rotate(&self, r: usize) -> FreeWord {
        let n = self.letters.len();
        if n == 0 {
            return self.clone();
        }
        let r = r % n;
        let mut v = self.letters[r..].to_vec();
        v.extend_from_slice(&self.letters[..r]);
        FreeWord::from_letters(&v)
    }

    /// Apply the endomorphism `a -> image_a`, `b -> image_b`.
    pub fn substitute(&self, image_a: &FreeWord, image_b: &FreeWord) -> FreeWord {
        let ia = image_a.inverse();
        let ib = image_b.inverse();
        let mut w = FreeWord::identity();
        for &l in &self.letters {
            let piece = match l {
                1 => image_a,
                -1 => &ia,
                2 => image_b,
                _ => &ib,
            };
            w = w.mul(piece);
        }
        w
    }

    /// Exponent sums `(in a, in b)`.
    pub fn abelianization(&self) -> (i64, i64) {
        let mut e = (0, 0);
        for &l in &self.letters {
            match l {
                1 => e.0 += 1,
                -1 => e.0 -= 1,
                2 => e.1 += 1,
                _ => e.1 -= 1,
            }
        }
        e
    }

    pub fn parse(s: &str) -> Option<FreeWord> {
        let mut letters = Vec::new();
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        let mut i = 0;
        while i < chars.len() {
            let g = match chars[i] {
                'a' => GEN_A,
                'b' => GEN_B,
                'A' => -GEN_A,
                'B' => -GEN_B,
                '1' if chars.len() == 1 => return Some(FreeWord::identity()),
                _ => return None,
            };
            i += 1;
            let mut exp = 1i64;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let start = i;
                if i < chars.len() && chars[i] == '-' {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let t: String = chars[start..i].iter().collect();
                exp = t.parse().ok()?;
            }
            let l = if exp < 0 { -g } else { g };
            for _ in 0..exp.unsigned_abs() {
                letters.push(l);
            }
        }
        Some(FreeWord::from_letters(&letters))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for &l in &self.letters {
            let c = match l {
                1 => "a",
                -1 => "A",
                2 => "b",
                _ => "B",
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeWord({self})")
    }
}
