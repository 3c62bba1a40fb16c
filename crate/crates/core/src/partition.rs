use std::fmt;

use crate::graph::VertexId;

/// A partition of the vertex set `0..n` in canonical form: members ascending,
/// classes ordered by their minimum member.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    classes: Vec<Vec<VertexId>>,
    class_of: Vec<usize>,
}

impl Partition {
    /// Builds the canonical partition from arbitrary classes. Panics if the
    /// classes do not partition `0..n`.
    pub fn from_classes(n: usize, classes: impl IntoIterator<Item = Vec<VertexId>>) -> Self {
        let mut classes: Vec<Vec<VertexId>> = classes
            .into_iter()
            .filter(|c| !c.is_empty())
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        classes.sort_unstable_by_key(|c| c[0]);
        let mut class_of = vec![usize::MAX; n];
        for (i, c) in classes.iter().enumerate() {
            for v in c {
                assert!(v.index() < n, "vertex {v} outside 0..{n}");
                assert_eq!(class_of[v.index()], usize::MAX, "vertex {v} in two classes");
                class_of[v.index()] = i;
            }
        }
        assert!(
            class_of.iter().all(|&c| c != usize::MAX),
            "classes do not cover all vertices"
        );
        Partition { classes, class_of }
    }

    /// Partition from a per-vertex class tag.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut groups: std::collections::BTreeMap<usize, Vec<VertexId>> = Default::default();
        for (v, &l) in labels.iter().enumerate() {
            groups.entry(l).or_default().push(VertexId::from_index(v));
        }
        Self::from_classes(labels.len(), groups.into_values())
    }

    pub fn singletons(n: usize) -> Self {
        Self::from_classes(n, (0..n).map(|v| vec![VertexId::from_index(v)]))
    }

    pub fn classes(&self) -> &[Vec<VertexId>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_of(&self, v: VertexId) -> usize {
        self.class_of[v.index()]
    }

    pub fn class_members(&self, v: VertexId) -> &[VertexId] {
        &self.classes[self.class_of(v)]
    }

    pub fn same_class(&self, u: VertexId, v: VertexId) -> bool {
        self.class_of[u.index()] == self.class_of[v.index()]
    }

    /// Whether every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.vertex_count() == coarser.vertex_count()
            && self
                .classes
                .iter()
                .all(|c| c.iter().all(|&v| coarser.same_class(v, c[0])))
    }
}

impl fmt::Display for Partition {
    /// One line per class, one-based vertex numbers separated by spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.classes {
            let line: Vec<String> = c.iter().map(|v| (v.0 + 1).to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(ids: &[u32]) -> Vec<VertexId> {
        ids.iter().map(|&i| VertexId(i)).collect()
    }

    #[test]
    fn canonical_order() {
        let p = Partition::from_classes(5, [vs(&[4, 2]), vs(&[3]), vs(&[1, 0])]);
        assert_eq!(p.classes(), &[vs(&[0, 1]), vs(&[2, 4]), vs(&[3])]);
        assert_eq!(p, Partition::from_labels(&[7, 7, 1, 0, 1]));
        assert_eq!(p.to_string(), "1 2\n3 5\n4\n");
    }

    #[test]
    fn refinement() {
        let fine = Partition::from_labels(&[0, 1, 2, 2]);
        let coarse = Partition::from_labels(&[0, 0, 1, 1]);
        assert!(fine.refines(&coarse));
        assert!(!coarse.refines(&fine));
        assert!(Partition::singletons(4).refines(&fine));
    }
}
