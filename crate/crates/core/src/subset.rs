use serde::{Deserialize, Serialize};

/// A set of element indices, kept sorted and free of duplicates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subset(Vec<usize>);

impl Subset {
    pub fn new(items: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = items.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Subset(v)
    }

    pub fn full(size: usize) -> Self {
        Subset((0..size).collect())
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        Subset(
            mask.iter()
                .enumerate()
                .filter_map(|(k, &b)| b.then_some(k))
                .collect(),
        )
    }

    pub fn mask(&self, size: usize) -> Vec<bool> {
        let mut m = vec![false; size];
        for &k in &self.0 {
            if k < size {
                m[k] = true;
            }
        }
        m
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        Subset(self.0.iter().copied().filter(|&x| other.contains(x)).collect())
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Subset::new(iter)
    }
}

impl<'a> IntoIterator for &'a Subset {
    type Item = &'a usize;
    type IntoIter = std::slice::Iter<'a, usize>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}
