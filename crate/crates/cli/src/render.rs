//! Text renderers: the staggered triangle and minimal CSV quoting.

use cremona_core::diagram::{columns_in_row, Diagram, DiagramEntry};

/// Render the diagram as the staggered centered triangle: row 1 on top,
/// each pair of rows shifted half a cell outward, entries two grid cells
/// apart so the layout matches the printed table.
pub fn triangle(d: &Diagram, cell: impl Fn(&DiagramEntry) -> String) -> String {
    let depth = d.depth();
    let rendered: Vec<Vec<String>> = d
        .rows()
        .iter()
        .map(|row| row.iter().map(&cell).collect())
        .collect();
    let width = rendered
        .iter()
        .flatten()
        .map(String::len)
        .max()
        .unwrap_or(1);
    // row i starts at grid column C - ceil((i-1)/2)
    let center = (depth as usize).div_ceil(2) - usize::from(depth % 2 == 0);
    let start = |i: usize| center - i.div_ceil(2);
    let mut out = String::new();
    for (r, row) in rendered.iter().enumerate() {
        let cols = start(r) + 2 * (columns_in_row(r as u32 + 1) as usize - 1) + 1;
        let mut grid = vec![String::new(); cols];
        for (k, text) in row.iter().enumerate() {
            grid[start(r) + 2 * k] = text.clone();
        }
        let line: String = grid
            .iter()
            .map(|t| format!("{t:^width$}"))
            .collect::<Vec<_>>()
            .join("");
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out.trim_end().to_string()
}

/// Join cells into one CSV record, quoting only where needed.
pub fn csv_row(cells: &[String]) -> String {
    cells
        .iter()
        .map(|c| {
            if c.contains(',') || c.contains('"') {
                format!("\"{}\"", c.replace('"', "\"\""))
            } else {
                c.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}
