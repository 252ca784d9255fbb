//! Built-in invariant sweep: block and codeword completeness, Kraft sums,
//! swap involution, and HFAC/HFSAC roundtrips.

use hfsac_core::analysis::iid_bits;
use hfsac_core::crypto::{decrypt, encrypt, KeySchedule};
use hfsac_core::fsm::{build_full_fsm, CoderParams};
use hfsac_core::huffman::{attach_tables, hfac_decode, hfac_encode, swap_codeword, StateCodeTable};
use hfsac_core::reduce::{is_prefix_free, kraft_sum_is_one, reduce, validate_reduced};
use hfsac_core::HfsacCodec;

const JUMP_PROBS: [u16; 3] = [0, 128, 230];
const ROUNDTRIP_BITS: usize = 4096;

/// `(N, p0 numerator, Fmax)` triples of the sweep: N in 3..=8, four
/// probabilities each, Fmax in {1, 3}.
pub fn sweep() -> Vec<(u8, u32, u8)> {
    let mut out = Vec::new();
    for n in 3u8..=8 {
        let full = 1u32 << n;
        let mut nums = vec![1, full / 5, full * 44 / 100, full / 2];
        nums.retain(|&p| p > 0);
        nums.dedup();
        for p in nums {
            for f in [1, 3] {
                out.push((n, p, f));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Default)]
pub struct SelftestReport {
    pub checks: Vec<Check>,
}

impl SelftestReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    fn push(&mut self, name: String, passed: bool) {
        self.checks.push(Check { name, passed });
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out += &format!("{} {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name);
        }
        out += &format!("{} checks, {} failed\n", self.checks.len(), self.failures());
        out
    }
}

fn tables_ok(tables: &[StateCodeTable]) -> bool {
    tables.iter().all(|t| {
        let codes: Vec<&[bool]> = t.entries.iter().map(|(_, c)| &c[..]).collect();
        let complete = is_prefix_free(&codes) && kraft_sum_is_one(codes.iter().map(|c| c.len()));
        let swaps = (0..=t.max_len).all(|pos| {
            let swapped: Vec<Vec<bool>> = codes.iter().map(|c| swap_codeword(c, pos)).collect();
            let refs: Vec<&[bool]> = swapped.iter().map(Vec::as_slice).collect();
            is_prefix_free(&refs)
                && swapped
                    .iter()
                    .zip(&codes)
                    .all(|(s, c)| swap_codeword(s, pos) == *c)
        });
        complete && swaps
    })
}

/// Runs the sweep. `corrupt_table` breaks one codeword of the first machine
/// so the failure path can be exercised.
pub fn run(corrupt_table: bool) -> SelftestReport {
    let mut report = SelftestReport::default();
    for (i, (n, p0, f)) in sweep().into_iter().enumerate() {
        let tag = format!("N={n} p0_num={p0} Fmax={f}");
        let params = CoderParams::new(n, p0, f, 0).expect("sweep parameters are valid");
        let rm = match build_full_fsm(params).and_then(|m| reduce(&m)) {
            Ok(rm) => rm,
            Err(e) => {
                report.push(format!("{tag}: build ({e})"), false);
                continue;
            }
        };
        report.push(
            format!("{tag}: input blocks complete"),
            validate_reduced(&rm).passed(),
        );

        let mut tables = attach_tables(rm.clone()).tables().to_vec();
        if corrupt_table && i == 0 {
            let entries = &mut tables[0].entries;
            entries[0].1 = entries[1].1.clone();
        }
        let ok = tables_ok(&tables);
        report.push(format!("{tag}: codewords complete, swap involutive"), ok);
        if !ok {
            continue;
        }
        let codec = HfsacCodec::from_tables(rm, tables);

        let plain = iid_bits(ROUNDTRIP_BITS, params.p0(), i as u64);
        let hfac = hfac_encode(&plain, &codec);
        report.push(
            format!("{tag}: HFAC roundtrip"),
            hfac_decode(&hfac, &codec, plain.len()).as_deref() == Ok(&plain[..]),
        );
        let ok = JUMP_PROBS.iter().all(|&q| {
            let ks = KeySchedule::new(0xC0DE_0000 + i as u64, q);
            let (cipher, _) = encrypt(&plain, &codec, ks.clone());
            decrypt(&cipher, &codec, ks, plain.len()).as_deref() == Ok(&plain[..])
        });
        report.push(format!("{tag}: HFSAC roundtrip"), ok);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_covers_grid() {
        let s = sweep();
        assert!(s.contains(&(3, 1, 1)));
        assert!(s.contains(&(8, 112, 3)));
        assert!(s.contains(&(8, 128, 1)));
        assert!(s.iter().all(|&(n, p, _)| p > 0 && p < 1 << n));
    }

    #[test]
    fn corrupt_table_is_detected() {
        let report = run(true);
        assert_eq!(report.failures(), 1);
        assert!(report
            .render()
            .contains("FAIL N=3 p0_num=1 Fmax=1: codewords"));
    }
}
