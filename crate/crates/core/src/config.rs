/// Limits and knobs shared by the table and verification pipelines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    /// Largest group order for which elements are enumerated.
    pub cap: usize,
    /// Largest number of conjugacy classes accepted by the character-table builder.
    pub max_classes: usize,
    /// Which admissible prime the Dixon-Schneider step uses: 0 is the smallest,
    /// 1 the next one, and so on.
    pub dixon_prime_rank: usize,
}

pub const DEFAULT_CAP: usize = 300_000;
pub const DEFAULT_MAX_CLASSES: usize = 80;

impl Default for Config {
    fn default() -> Self {
        Config {
            cap: DEFAULT_CAP,
            max_classes: DEFAULT_MAX_CLASSES,
            dixon_prime_rank: 0,
        }
    }
}

impl Config {
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_prime_rank(mut self, rank: usize) -> Self {
        self.dixon_prime_rank = rank;
        self
    }
}
