use std::fmt;

const WORD_BITS: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A vector over GF(2) of fixed length.
///
/// Bits past `len` in the last word are always zero, so derived equality and
/// hashing agree with coordinate equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// The standard basis vector `e_i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector from a 0/1 slice. Any nonzero entry counts as 1.
    pub fn from_u8s(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector of length `len` with the listed coordinates set.
    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Lowest set coordinate.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, &w)| k * WORD_BITS + w.trailing_zeros() as usize)
    }

    /// Set coordinates in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * WORD_BITS + b)
                }
            })
        })
    }

    pub fn add_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Dot product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Coordinates `range` as a new vector.
    pub fn slice(&self, start: usize, end: usize) -> BitVector {
        assert!(start <= end && end <= self.len);
        let mut out = BitVector::zeros(end - start);
        for i in self.ones().filter(|&i| i >= start && i < end) {
            out.set(i - start, true);
        }
        out
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Add for &BitVector {
    type Output = BitVector;

    fn add(self, rhs: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trailing_bits_stay_clear() {
        let mut v = BitVector::zeros(70);
        v.set(69, true);
        v.flip(69);
        assert!(v.is_zero());
        assert_eq!(v, BitVector::zeros(70));
    }

    #[test]
    fn ones_iterates_in_order() {
        let v = BitVector::from_indices(130, [3, 64, 129, 0]);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 3, 64, 129]);
        assert_eq!(v.first_one(), Some(0));
        assert_eq!(v.count_ones(), 4);
    }

    #[test]
    fn concat_and_slice() {
        let a = BitVector::from_u8s(&[1, 0, 1]);
        let b = BitVector::from_u8s(&[0, 1]);
        let c = a.concat(&b);
        assert_eq!(c, BitVector::from_u8s(&[1, 0, 1, 0, 1]));
        assert_eq!(c.slice(3, 5), b);
        assert_eq!(c.slice(0, 3), a);
    }

    #[test]
    fn dot_product() {
        let a = BitVector::from_u8s(&[1, 1, 0, 1]);
        let b = BitVector::from_u8s(&[1, 1, 1, 0]);
        assert!(!a.dot(&b));
        assert!(a.dot(&BitVector::unit(4, 3)));
    }
}
