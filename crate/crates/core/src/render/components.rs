use super::{ClassGrid, Classified};
use crate::orbit::ClassTag;

/// Number of 4-connected regions of cells tagged `target`.
pub fn count_components<C: Classified>(grid: &ClassGrid<C>, target: ClassTag) -> usize {
    let (w, h) = (grid.width_px, grid.height_px);
    let mut seen = vec![false; w * h];
    let mut stack = Vec::new();
    let mut count = 0;
    for start in 0..w * h {
        if seen[start] || grid.cells[start].tag() != target {
            continue;
        }
        count += 1;
        seen[start] = true;
        stack.push(start);
        while let Some(k) = stack.pop() {
            let (col, row) = (k % w, k / w);
            let mut visit = |c: usize, r: usize| {
                let j = r * w + c;
                if !seen[j] && grid.cells[j].tag() == target {
                    seen[j] = true;
                    stack.push(j);
                }
            };
            if col > 0 {
                visit(col - 1, row);
            }
            if col + 1 < w {
                visit(col + 1, row);
            }
            if row > 0 {
                visit(col, row - 1);
            }
            if row + 1 < h {
                visit(col, row + 1);
            }
        }
    }
    count
}
