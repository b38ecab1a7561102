use crate::cycles::CycleDecomposition;
use crate::error::{Error, Result};
use crate::tree::IncreasingTree;
use crate::Label;

/// The order-preserving bijection between a sorted label set and
/// `{0, …, len-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeling {
    domain: Vec<Label>,
}

impl Relabeling {
    pub fn order_isomorphism(labels: impl IntoIterator<Item = Label>) -> Result<Self> {
        let mut domain: Vec<Label> = labels.into_iter().collect();
        domain.sort_unstable();
        if let Some(w) = domain.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::RepeatedLabel(w[0]));
        }
        Ok(Relabeling { domain })
    }

    pub fn domain(&self) -> &[Label] {
        &self.domain
    }

    pub fn forward(&self, x: Label) -> Result<Label> {
        self.domain.binary_search(&x).map_err(|_| Error::LabelOutOfRange(x))
    }

    pub fn backward(&self, i: Label) -> Result<Label> {
        self.domain.get(i).copied().ok_or(Error::LabelOutOfRange(i))
    }

    pub fn relabel_cycles(&self, p: &CycleDecomposition) -> Result<CycleDecomposition> {
        p.map_labels(|x| self.forward(x))
    }

    pub fn restore_cycles(&self, p: &CycleDecomposition) -> Result<CycleDecomposition> {
        p.map_labels(|x| self.backward(x))
    }

    pub fn relabel_tree(&self, t: &IncreasingTree) -> Result<IncreasingTree> {
        t.map_labels(|x| self.forward(x))
    }

    pub fn restore_tree(&self, t: &IncreasingTree) -> Result<IncreasingTree> {
        t.map_labels(|x| self.backward(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Rank of each label within the sorted ground set, computed by counting.
    fn oracle(p: &CycleDecomposition) -> CycleDecomposition {
        let g = p.ground_set();
        let cycles = p
            .cycles()
            .iter()
            .map(|c| c.iter().map(|x| g.iter().filter(|&y| y < x).count()).collect())
            .collect();
        CycleDecomposition::new(cycles).unwrap()
    }

    #[test]
    fn relabel_examples() {
        let p: CycleDecomposition = "(1 3 5 2 6 8)(4 7)".parse().unwrap();
        let r = Relabeling::order_isomorphism(p.ground_set()).unwrap();
        let q = r.relabel_cycles(&p).unwrap();
        assert_eq!(q.to_string(), "(0 2 4 1 5 7)(3 6)");
        assert_eq!(q, oracle(&p));
        assert_eq!(r.restore_cycles(&q).unwrap(), p);

        let p: CycleDecomposition = "(2 5)(3 4)".parse().unwrap();
        let r = Relabeling::order_isomorphism(p.ground_set()).unwrap();
        assert_eq!(r.relabel_cycles(&p).unwrap().to_string(), "(0 3)(1 2)");

        let p: CycleDecomposition = "(0 2 1)(3 4)".parse().unwrap();
        let r = Relabeling::order_isomorphism(0..5).unwrap();
        assert_eq!(r.relabel_cycles(&p).unwrap(), p);
    }

    #[test]
    fn outside_domain() {
        let r = Relabeling::order_isomorphism([2, 4]).unwrap();
        assert_eq!(r.forward(3), Err(Error::LabelOutOfRange(3)));
        assert_eq!(r.backward(2), Err(Error::LabelOutOfRange(2)));
        let p: CycleDecomposition = "(2 3)".parse().unwrap();
        assert!(r.relabel_cycles(&p).is_err());
    }

    #[test]
    fn trees_round_trip() {
        let t = IncreasingTree::from_edges([1, 3, 4, 8], [(3, 1), (4, 1), (8, 3)]).unwrap();
        let r = Relabeling::order_isomorphism(t.labels().to_vec()).unwrap();
        let s = r.relabel_tree(&t).unwrap();
        assert_eq!(s.to_string(), "size=4;parents=0,0,1");
        assert_eq!(r.restore_tree(&s).unwrap(), t);
    }
}
