//! An independent, deliberately naive implementation of the classical
//! (grade-1) semantics, working directly on raw attack-pair lists with
//! `u64` bitmask subsets. It shares no code with the library under test
//! and exists purely as a cross-check.

pub struct Oracle {
    pub n: usize,
    pub attacks: Vec<(usize, usize)>,
}

fn maximal(sets: &[u64]) -> Vec<u64> {
    sets.iter()
        .copied()
        .filter(|&e| !sets.iter().any(|&f| f != e && e & f == e))
        .collect()
}

impl Oracle {
    pub fn new(n: usize, attacks: Vec<(usize, usize)>) -> Self {
        Oracle { n, attacks }
    }

    fn all_masks(&self) -> impl Iterator<Item = u64> {
        0..1u64 << self.n
    }

    fn full(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    fn conflict_free(&self, e: u64) -> bool {
        !self.attacks.iter().any(|&(x, y)| e >> x & 1 == 1 && e >> y & 1 == 1)
    }

    /// Some member of `e` attacks `target`.
    fn attacked_by_set(&self, e: u64, target: usize) -> bool {
        self.attacks.iter().any(|&(x, y)| y == target && e >> x & 1 == 1)
    }

    /// Every attacker of `a` is attacked by a member of `e`.
    fn defends(&self, e: u64, a: usize) -> bool {
        self.attacks
            .iter()
            .filter(|&&(_, y)| y == a)
            .all(|&(b, _)| self.attacked_by_set(e, b))
    }

    fn self_defended(&self, e: u64) -> bool {
        (0..self.n).all(|a| e >> a & 1 == 0 || self.defends(e, a))
    }

    pub fn cf(&self) -> Vec<u64> {
        self.all_masks().filter(|&e| self.conflict_free(e)).collect()
    }

    pub fn def(&self) -> Vec<u64> {
        self.all_masks().filter(|&e| self.self_defended(e)).collect()
    }

    pub fn admissible(&self) -> Vec<u64> {
        self.all_masks()
            .filter(|&e| self.conflict_free(e) && self.self_defended(e))
            .collect()
    }

    pub fn complete(&self) -> Vec<u64> {
        self.admissible()
            .into_iter()
            .filter(|&e| (0..self.n).all(|a| !self.defends(e, a) || e >> a & 1 == 1))
            .collect()
    }

    /// Iterate the characteristic function from ∅.
    pub fn grounded_lfp(&self) -> u64 {
        let mut e = 0u64;
        loop {
            let next = (0..self.n).filter(|&a| self.defends(e, a)).fold(0, |acc, a| acc | 1 << a);
            if next == e {
                return e;
            }
            e = next;
        }
    }

    /// The least complete extension, when one exists.
    pub fn gr(&self) -> Vec<u64> {
        let co = self.complete();
        co.iter().copied().filter(|&e| co.iter().all(|&f| e & f == e)).collect()
    }

    pub fn gr_dung(&self) -> Vec<u64> {
        vec![self.grounded_lfp()]
    }

    pub fn gr_dunne(&self) -> Vec<u64> {
        vec![self.complete().into_iter().fold(self.full(), |acc, e| acc & e)]
    }

    pub fn naive(&self) -> Vec<u64> {
        maximal(&self.cf())
    }

    pub fn preferred(&self) -> Vec<u64> {
        maximal(&self.complete())
    }

    pub fn pr_dung(&self) -> Vec<u64> {
        maximal(&self.admissible())
    }

    pub fn stable(&self) -> Vec<u64> {
        self.cf().into_iter().filter(|&e| self.range(e) == self.full()).collect()
    }

    fn range(&self, e: u64) -> u64 {
        let attacked =
            (0..self.n).filter(|&a| self.attacked_by_set(e, a)).fold(0, |acc, a| acc | 1 << a);
        e | attacked
    }

    fn range_maximal(&self, base: Vec<u64>) -> Vec<u64> {
        base.iter()
            .copied()
            .filter(|&e| {
                !base.iter().any(|&f| {
                    let (re, rf) = (self.range(e), self.range(f));
                    re & rf == re && re != rf
                })
            })
            .collect()
    }

    pub fn stage(&self) -> Vec<u64> {
        self.range_maximal(self.cf())
    }

    pub fn semi_stable(&self) -> Vec<u64> {
        self.range_maximal(self.complete())
    }

    pub fn rra(&self) -> Vec<u64> {
        self.range_maximal(self.admissible())
    }

    pub fn rrs(&self) -> Vec<u64> {
        self.range_maximal(self.stable())
    }

    /// Maximal admissible set below every member of `upper`.
    fn max_below(&self, upper: &[u64]) -> Vec<u64> {
        let cap = upper.iter().copied().fold(self.full(), |acc, e| acc & e);
        let below: Vec<u64> =
            self.admissible().into_iter().filter(|&e| e & cap == e).collect();
        maximal(&below)
    }

    pub fn ideal(&self) -> Vec<u64> {
        self.max_below(&self.preferred())
    }

    pub fn eager(&self) -> Vec<u64> {
        self.max_below(&self.semi_stable())
    }
}
