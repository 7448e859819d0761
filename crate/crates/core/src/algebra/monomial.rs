use std::fmt;

pub const MODE_COUNT: usize = 6;

/// Bosonic modes: the four JPOs and the two coupler normal modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Jpo(usize),
    Plus,
    Minus,
}

impl Mode {
    pub const ALL: [Mode; MODE_COUNT] = [
        Mode::Jpo(0),
        Mode::Jpo(1),
        Mode::Jpo(2),
        Mode::Jpo(3),
        Mode::Plus,
        Mode::Minus,
    ];

    pub fn index(self) -> usize {
        match self {
            Mode::Jpo(k) => {
                assert!(k < 4, "JPO index out of range");
                k
            }
            Mode::Plus => 4,
            Mode::Minus => 5,
        }
    }

    pub fn from_index(i: usize) -> Mode {
        Mode::ALL[i]
    }

    pub fn label(self) -> String {
        match self {
            Mode::Jpo(k) => format!("{}", k + 1),
            Mode::Plus => "+".into(),
            Mode::Minus => "-".into(),
        }
    }
}

/// Normal-ordered product: per mode `a†^c a^d`, written as (c, d).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ModeMonomial {
    pub powers: [(u8, u8); MODE_COUNT],
}

impl ModeMonomial {
    pub const IDENTITY: ModeMonomial = ModeMonomial {
        powers: [(0, 0); MODE_COUNT],
    };

    pub fn new(factors: &[(Mode, u8, u8)]) -> Self {
        let mut m = Self::IDENTITY;
        for &(mode, c, d) in factors {
            let slot = &mut m.powers[mode.index()];
            slot.0 += c;
            slot.1 += d;
        }
        m
    }

    pub fn creation(mode: Mode) -> Self {
        Self::new(&[(mode, 1, 0)])
    }

    pub fn annihilation(mode: Mode) -> Self {
        Self::new(&[(mode, 0, 1)])
    }

    pub fn number(mode: Mode) -> Self {
        Self::new(&[(mode, 1, 1)])
    }

    pub fn degree(&self) -> u32 {
        self.powers.iter().map(|&(c, d)| (c + d) as u32).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.degree() == 0
    }

    pub fn adjoint(&self) -> Self {
        let mut m = *self;
        for slot in m.powers.iter_mut() {
            *slot = (slot.1, slot.0);
        }
        m
    }

    /// Net quanta added to each mode.
    pub fn net_change(&self) -> [i32; MODE_COUNT] {
        let mut out = [0; MODE_COUNT];
        for (o, &(c, d)) in out.iter_mut().zip(self.powers.iter()) {
            *o = c as i32 - d as i32;
        }
        out
    }

    pub fn touches(&self, mode: Mode) -> bool {
        self.powers[mode.index()] != (0, 0)
    }

    /// Normal-ordered expansion of `self * other`, one mode at a time:
    /// a†^c1 a^d1 a†^c2 a^d2 = sum_k k! C(d1,k) C(c2,k) a†^(c1+c2-k) a^(d1+d2-k).
    pub fn product(&self, other: &Self) -> Vec<(u64, ModeMonomial)> {
        let mut acc: Vec<(u64, ModeMonomial)> = vec![(1, ModeMonomial::IDENTITY)];
        for i in 0..MODE_COUNT {
            let (c1, d1) = self.powers[i];
            let (c2, d2) = other.powers[i];
            let contractions = d1.min(c2);
            if contractions == 0 {
                for (_, m) in acc.iter_mut() {
                    m.powers[i] = (c1 + c2, d1 + d2);
                }
                continue;
            }
            let mut next = Vec::with_capacity(acc.len() * (contractions as usize + 1));
            for k in 0..=contractions {
                let weight = factorial(k as u64)
                    * binomial(d1 as u64, k as u64)
                    * binomial(c2 as u64, k as u64);
                for &(w, m) in &acc {
                    let mut m = m;
                    m.powers[i] = (c1 + c2 - k, d1 + d2 - k);
                    next.push((w * weight, m));
                }
            }
            acc = next;
        }
        acc
    }
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

impl fmt::Display for ModeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        let mut parts = Vec::new();
        for (i, &(c, _)) in self.powers.iter().enumerate() {
            if c > 0 {
                parts.push(power_label(
                    &format!("a{}'", Mode::from_index(i).label()),
                    c,
                ));
            }
        }
        for (i, &(_, d)) in self.powers.iter().enumerate() {
            if d > 0 {
                parts.push(power_label(&format!("a{}", Mode::from_index(i).label()), d));
            }
        }
        f.write_str(&parts.join(" "))
    }
}

fn power_label(base: &str, p: u8) -> String {
    if p == 1 {
        base.to_string()
    } else {
        format!("{base}^{p}")
    }
}
