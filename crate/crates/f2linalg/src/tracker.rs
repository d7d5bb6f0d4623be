use crate::BitVector;

#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    vector: BitVector,
    combo: BitVector,
}

/// Incremental echelon basis of a subspace of `GF(2)^dim`.
///
/// Vectors can be inserted with or without a tag. Every stored row remembers
/// which tagged inputs it is a combination of (modulo untagged inputs), so
/// [`SpanTracker::reduce`] expresses any vector in the span as a sum of
/// tagged vectors plus something in the untagged span.
///
/// Rows are kept so that each row vanishes at the pivots of all earlier rows;
/// reducing in insertion order therefore clears every pivot.
#[derive(Clone, Debug)]
pub struct SpanTracker {
    dim: usize,
    tags: usize,
    rows: Vec<Row>,
}

impl SpanTracker {
    /// `dim` is the ambient dimension, `tags` the number of distinct tags.
    pub fn new(dim: usize, tags: usize) -> Self {
        Self {
            dim,
            tags,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.pivot)
    }

    /// Reduces `v` against the stored rows.
    ///
    /// Returns the residual (zero iff `v` is in the span) and the set of tags
    /// whose sum is congruent to `v - residual` modulo the untagged span.
    pub fn reduce(&self, v: &BitVector) -> (BitVector, BitVector) {
        assert_eq!(v.len(), self.dim, "vector length must equal tracker dimension");
        let mut residual = v.clone();
        let mut combo = BitVector::zeros(self.tags);
        for row in &self.rows {
            if residual.get(row.pivot) {
                residual.add_assign(&row.vector);
                combo.add_assign(&row.combo);
            }
        }
        (residual, combo)
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Inserts an untagged vector; returns whether the rank grew.
    pub fn insert(&mut self, v: &BitVector) -> bool {
        self.insert_inner(v, None)
    }

    /// Inserts `v` labelled by `tag`; returns whether the rank grew.
    ///
    /// When `v` is already in the span nothing is stored and the tag stays
    /// unused, so callers can hand out tags only to accepted vectors.
    pub fn insert_tagged(&mut self, v: &BitVector, tag: usize) -> bool {
        assert!(tag < self.tags, "tag {tag} exceeds capacity {}", self.tags);
        self.insert_inner(v, Some(tag))
    }

    fn insert_inner(&mut self, v: &BitVector, tag: Option<usize>) -> bool {
        let (residual, mut combo) = self.reduce(v);
        let Some(pivot) = residual.first_one() else {
            return false;
        };
        if let Some(t) = tag {
            combo.flip(t);
        }
        self.rows.push(Row {
            pivot,
            vector: residual,
            combo,
        });
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expresses_vectors_in_tagged_basis_modulo_untagged() {
        // sub = span{e0 + e1}; quotient basis tags: 0 -> e1, 1 -> e2
        let mut t = SpanTracker::new(3, 2);
        assert!(t.insert(&BitVector::from_u8s(&[1, 1, 0])));
        assert!(t.insert_tagged(&BitVector::from_u8s(&[0, 1, 0]), 0));
        assert!(!t.insert_tagged(&BitVector::from_u8s(&[1, 0, 0]), 1));
        assert!(t.insert_tagged(&BitVector::from_u8s(&[0, 0, 1]), 1));
        assert_eq!(t.rank(), 3);

        // e0 = (e0 + e1) + e1  ->  tag 0
        let (res, combo) = t.reduce(&BitVector::from_u8s(&[1, 0, 0]));
        assert!(res.is_zero());
        assert_eq!(combo, BitVector::from_u8s(&[1, 0]));

        let (res, combo) = t.reduce(&BitVector::from_u8s(&[1, 1, 1]));
        assert!(res.is_zero());
        assert_eq!(combo, BitVector::from_u8s(&[0, 1]));
    }

    #[test]
    fn residual_is_nonzero_outside_span() {
        let mut t = SpanTracker::new(4, 0);
        t.insert(&BitVector::from_u8s(&[1, 1, 0, 0]));
        assert!(!t.contains(&BitVector::from_u8s(&[0, 0, 0, 1])));
        assert!(t.contains(&BitVector::zeros(4)));
    }
}
