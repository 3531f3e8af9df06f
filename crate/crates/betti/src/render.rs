//! Betti-diagram layout: column `i`, row `j - i`, `.` for absent entries and
//! a `total:` row on top.

use betti_core::rational::render;
use betti_core::BettiTable;

pub fn diagram(t: &BettiTable) -> String {
    let (Some(pdim), Some(top), Some(bottom)) = (t.pdim(), t.min_row(), t.reg()) else {
        return String::from("(empty table)\n");
    };
    let columns = pdim + 1;
    let mut rows: Vec<(String, Vec<String>)> = Vec::new();
    rows.push((
        String::from("total:"),
        (0..columns).map(|i| render(&t.total_betti(i))).collect(),
    ));
    for row in top..=bottom {
        let cells = (0..columns)
            .map(|i| {
                t.get(i, row + i as i64)
                    .map_or_else(|| String::from("."), render)
            })
            .collect();
        rows.push((format!("{row}:"), cells));
    }
    let header: Vec<String> = (0..columns).map(|i| i.to_string()).collect();
    let label_width = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..columns)
        .map(|c| {
            rows.iter()
                .map(|(_, cells)| cells[c].len())
                .chain([header[c].len()])
                .max()
                .unwrap_or(1)
        })
        .collect();

    let mut out = String::new();
    let mut line = |label: &str, cells: &[String]| {
        let mut s = format!("{label:>label_width$}");
        for (cell, w) in cells.iter().zip(&widths) {
            s.push(' ');
            s.push_str(&format!("{cell:>w$}"));
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line("", &header);
    for (label, cells) in &rows {
        line(label, cells);
    }
    out
}
