//! Shared helpers for the integration suites: seeded random problem
//! drawing, conditioned so that solved chains stay at desk scale.

use kgexact::charsys::{solve_chain, Branch, Dim, DirectionRow, DirectionTable};
use kgexact::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Draw a mass and direction table whose plus-branch chain solves with
/// every coefficient (drawn or derived) within magnitude 2. Rows are kept
/// small and near-degenerate radicands are redrawn, so the rejection loop
/// terminates quickly.
pub fn draw_spec(
    rng: &mut ChaCha8Rng,
    dim: Dim,
    r_max: usize,
) -> (Complex64, DirectionTable<Complex64>) {
    loop {
        let mass = Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0));
        let mut rows = Vec::with_capacity(r_max + 1);
        for _ in 0..=r_max {
            let mut draw = |scale: f64| {
                Complex64::new(
                    rng.random_range(-scale..=scale),
                    rng.random_range(-scale..=scale),
                )
            };
            let m = draw(0.5);
            let g = if dim.n_coords() >= 3 {
                draw(0.5)
            } else {
                Complex64::new(0.0, 0.0)
            };
            let d = if dim.n_coords() >= 4 {
                draw(0.5)
            } else {
                Complex64::new(0.0, 0.0)
            };
            rows.push(DirectionRow::new(m, g, d));
        }
        let radicand = rows[0].m * rows[0].m + rows[0].g * rows[0].g + rows[0].d * rows[0].d - mass;
        if radicand.norm() < 0.3 {
            continue;
        }
        let table = DirectionTable::new(dim, rows);
        match solve_chain(&mass, &table, Branch::Plus, r_max) {
            Ok(chain) if chain.k.iter().all(|k| k.norm() <= 2.0) => return (mass, table),
            _ => continue,
        }
    }
}
