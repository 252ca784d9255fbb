//! Text and CSV rendering of code tables, benchmarks and metric reports.

use std::fmt::Write as _;

use hfsac_core::analysis::{BenchRow, MetricsReport};
use hfsac_core::bits::to_string;
use hfsac_core::HfsacCodec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

/// One row per reduced transition: state, input block, arithmetic output,
/// Huffman output, next state.
pub fn code_table(codec: &HfsacCodec, format: Format) -> String {
    let rm = codec.machine();
    let rows: Vec<[String; 5]> = rm
        .transitions()
        .iter()
        .enumerate()
        .map(|(i, t)| {
            [
                t.from.to_string(),
                to_string(&t.input_block),
                to_string(&t.output_bits),
                to_string(codec.codeword(i)),
                t.to.to_string(),
            ]
        })
        .collect();
    let header = [
        "state",
        "input",
        "arithmetic_output",
        "huffman_output",
        "next_state",
    ];
    match format {
        Format::Csv => {
            let mut out = header.join(",") + "\n";
            for row in rows {
                out += &(row.join(",") + "\n");
            }
            out
        }
        Format::Text => {
            let mut widths = header.map(str::len);
            for row in &rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            let mut out = String::new();
            let mut line = |cells: &[&str]| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                out += padded.join("  ").trim_end();
                out.push('\n');
            };
            line(&header);
            for row in &rows {
                line(&row.each_ref().map(String::as_str));
            }
            let _ = writeln!(
                out,
                "\n{} states, {} transitions",
                rm.state_count(),
                rm.transitions().len()
            );
            out
        }
    }
}

pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("p0,states,ac_percent,fsac_percent,hfac_percent\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{:.4},{:.4},{:.4}",
            r.p0, r.states, r.ac, r.fsac, r.hfac
        );
    }
    out
}

/// Flattened `(metric, value)` pairs, shared by both formats.
fn metric_rows(r: &MetricsReport) -> Vec<(String, String)> {
    let mut rows = vec![
        ("plain_bits".into(), r.plain_bits.to_string()),
        ("cipher_bits".into(), r.cipher_bits.to_string()),
        ("cipher_entropy".into(), format!("{:.6}", r.entropy)),
        ("monobit_p".into(), format!("{:.6}", r.randomness.monobit)),
        (
            "block_frequency_p".into(),
            format!("{:.6}", r.randomness.block_frequency),
        ),
        ("runs_p".into(), format!("{:.6}", r.randomness.runs)),
    ];
    for (side, c) in [("plain", &r.plain_corr), ("cipher", &r.cipher_corr)] {
        rows.push((
            format!("{side}_corr_horizontal"),
            format!("{:.6}", c.horizontal),
        ));
        rows.push((
            format!("{side}_corr_vertical"),
            format!("{:.6}", c.vertical),
        ));
        rows.push((
            format!("{side}_corr_diagonal"),
            format!("{:.6}", c.diagonal),
        ));
    }
    rows.push(("npcr_percent".into(), format!("{:.4}", r.npcr)));
    rows.push(("uaci_percent".into(), format!("{:.4}", r.uaci)));
    rows.push((
        "cipher_hist_chi_square".into(),
        format!("{:.4}", r.cipher_chi_square.0),
    ));
    rows.push((
        "cipher_hist_p".into(),
        format!("{:.6e}", r.cipher_chi_square.1),
    ));
    for (label, v) in r.key_corr {
        rows.push((format!("key_flip_corr_{label}"), format!("{v:.6e}")));
    }
    for (label, v) in &r.compression {
        rows.push((format!("compression_{label}_percent"), format!("{v:.4}")));
    }
    let visited = r.state_visits.iter().filter(|&&v| v > 0);
    let (min, max) = visited.fold((u64::MAX, 0), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    rows.push(("states".into(), r.state_visits.len().to_string()));
    rows.push((
        "visit_min".into(),
        if max == 0 {
            "0".into()
        } else {
            min.to_string()
        },
    ));
    rows.push(("visit_max".into(), max.to_string()));
    rows
}

pub fn metrics(r: &MetricsReport, format: Format) -> String {
    let rows = metric_rows(r);
    let mut out = String::new();
    match format {
        Format::Csv => {
            out += "metric,value\n";
            for (k, v) in &rows {
                let _ = writeln!(out, "{k},{v}");
            }
            out += "\nlevel,plain_count,cipher_count\n";
            for (level, (p, c)) in r
                .plain_histogram
                .iter()
                .zip(&r.cipher_histogram)
                .enumerate()
            {
                let _ = writeln!(out, "{level},{p},{c}");
            }
            out += "\nstate,visits\n";
            for (s, v) in r.state_visits.iter().enumerate() {
                let _ = writeln!(out, "{s},{v}");
            }
        }
        Format::Text => {
            let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in &rows {
                let _ = writeln!(out, "{k:<width$}  {v}");
            }
        }
    }
    out
}
