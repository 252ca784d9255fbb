#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeyspaceMode {
    /// Binomial coefficient through log-gamma.
    Exact,
    /// Stirling form `c * 2^n / sqrt(n)` with `c = 0.8` (0.4 with a forced
    /// first jump).
    Asymptotic,
}

/// `log2` of the number of jump keys `S^C(n, floor(n/2))` for a plaintext of
/// `n` steps and `S` states. With `forced_first` the first jump is fixed and
/// the exponent becomes `C(n-1, floor((n-1)/2))`, which is `C(n-1, n/2-1)`
/// for even `n`.
pub fn keyspace_bits(n: u64, states: u64, forced_first: bool, mode: KeyspaceMode) -> f64 {
    if states <= 1 {
        return 0.0;
    }
    let log2_states = libm::log2(states as f64);
    let n_f = n as f64;
    let exponent = match mode {
        KeyspaceMode::Exact => {
            let (top, k) = match (forced_first, n) {
                (false, _) => (n, n / 2),
                (true, 0) => return 0.0,
                (true, _) => (n - 1, (n - 1) / 2),
            };
            libm::exp(ln_binomial(top as f64, k as f64))
        }
        KeyspaceMode::Asymptotic => {
            let c = if forced_first { 0.4 } else { 0.8 };
            c * libm::exp2(n_f) / libm::sqrt(n_f)
        }
    };
    exponent * log2_states
}

fn ln_binomial(n: f64, k: f64) -> f64 {
    libm::lgamma(n + 1.0) - libm::lgamma(k + 1.0) - libm::lgamma(n - k + 1.0)
}
