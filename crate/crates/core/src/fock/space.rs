use super::FockConfig;

/// Product basis with the first active mode most significant.
#[derive(Clone, Debug)]
pub struct FockSpace {
    levels: usize,
    modes: usize,
    occupations: Vec<Vec<usize>>,
    sectors: Vec<Vec<usize>>,
}

impl FockSpace {
    pub fn new(config: &FockConfig) -> Self {
        let levels = config.levels;
        let modes = config.modes.len();
        let dim = config.dimension();
        let mut occupations = Vec::with_capacity(dim);
        let mut sectors = vec![Vec::new(); modes * (levels - 1) + 1];
        for idx in 0..dim {
            let mut occ = vec![0; modes];
            let mut rest = idx;
            for slot in (0..modes).rev() {
                occ[slot] = rest % levels;
                rest /= levels;
            }
            sectors[occ.iter().sum::<usize>()].push(idx);
            occupations.push(occ);
        }
        FockSpace {
            levels,
            modes,
            occupations,
            sectors,
        }
    }

    pub fn dimension(&self) -> usize {
        self.occupations.len()
    }

    pub fn occupation(&self, idx: usize) -> &[usize] {
        &self.occupations[idx]
    }

    pub fn total(&self, idx: usize) -> usize {
        self.occupations[idx].iter().sum()
    }

    pub fn index(&self, occ: &[usize]) -> Option<usize> {
        if occ.len() != self.modes || occ.iter().any(|&n| n >= self.levels) {
            return None;
        }
        Some(occ.iter().fold(0, |acc, &n| acc * self.levels + n))
    }

    /// States grouped by total occupation.
    pub fn sectors(&self) -> &[Vec<usize>] {
        &self.sectors
    }

    pub fn states_up_to(&self, total: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .sectors
            .iter()
            .take(total + 1)
            .flatten()
            .copied()
            .collect();
        out.sort_unstable();
        out
    }
}
