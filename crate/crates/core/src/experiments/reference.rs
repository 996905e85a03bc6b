//! Published reference results for `ω_γ(G(n,p))`: 100 instances per row.

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReferenceRow {
    pub n: u64,
    pub p: f64,
    /// `(num, den)`
    pub gamma: (u64, u64),
    pub omega_min: usize,
    pub omega_max: usize,
    pub omega_avg: f64,
    pub omega_th: f64,
}

const fn row(
    n: u64,
    p: f64,
    gamma: (u64, u64),
    min: usize,
    max: usize,
    avg: f64,
    th: f64,
) -> ReferenceRow {
    ReferenceRow {
        n,
        p,
        gamma,
        omega_min: min,
        omega_max: max,
        omega_avg: avg,
        omega_th: th,
    }
}

pub const REFERENCE: [ReferenceRow; 27] = [
    row(50, 0.20, (9, 10), 4, 5, 4.95, 5.72),
    row(50, 0.20, (4, 5), 5, 7, 6.01, 6.92),
    row(50, 0.20, (7, 10), 6, 8, 7.2, 8.44),
    row(50, 0.20, (3, 5), 8, 11, 9.48, 10.41),
    row(50, 0.20, (1, 2), 10, 15, 12.58, 12.64),
    row(50, 0.15, (9, 10), 3, 5, 4.12, 5.06),
    row(50, 0.15, (4, 5), 4, 6, 5.19, 6.03),
    row(50, 0.15, (7, 10), 5, 8, 6.02, 7.26),
    row(50, 0.15, (3, 5), 6, 10, 7.62, 8.87),
    row(50, 0.15, (1, 2), 8, 12, 9.85, 10.99),
    row(50, 0.10, (9, 10), 3, 5, 3.27, 4.39),
    row(50, 0.10, (4, 5), 3, 5, 4.28, 5.14),
    row(50, 0.10, (7, 10), 3, 6, 5.05, 6.09),
    row(50, 0.10, (3, 5), 5, 8, 6.15, 7.34),
    row(50, 0.10, (1, 2), 6, 10, 7.8, 9.05),
    row(100, 0.15, (9, 10), 4, 5, 4.98, 5.82),
    row(100, 0.15, (17, 20), 4, 6, 5.6, 6.4),
    row(100, 0.15, (4, 5), 6, 7, 6.21, 7.04),
    row(100, 0.15, (3, 4), 6, 8, 6.95, 7.78),
    row(100, 0.10, (9, 10), 3, 6, 4.41, 4.99),
    row(100, 0.10, (4, 5), 5, 7, 5.23, 5.92),
    row(100, 0.10, (7, 10), 5, 8, 6.11, 7.12),
    row(100, 0.10, (3, 5), 7, 10, 7.74, 8.75),
    row(100, 0.05, (4, 5), 3, 5, 4.1, 4.73),
    row(100, 0.05, (3, 5), 5, 7, 5.72, 6.65),
    row(100, 0.05, (2, 5), 7, 11, 9.06, 10.56),
    row(100, 0.05, (3, 10), 11, 16, 12.77, 14.44),
];
