// Histogram of (tr a, tr [a,b]) over Haar pairs, drawn as a character map,
// and the mass near the boundary of the domain.

use su2gap::measure::{boundary_mass, pushforward_histogram};

pub fn run_example() -> su2gap::Result<()> {
    let bins = 20;
    let h = pushforward_histogram(200_000, bins, 5)?;
    let peak = h.counts.iter().copied().max().unwrap_or(1) as f64;
    let shades = [' ', '.', ':', '-', '=', '+', '*', '#', '%', '@'];
    // t increases upwards, x to the right
    for col in (0..bins).rev() {
        let line: String = (0..bins)
            .map(|row| {
                let n = h.count(row, col);
                if n == 0 {
                    ' '
                } else {
                    shades[1 + ((n as f64 / peak) * 8.0) as usize]
                }
            })
            .collect();
        println!("|{line}|");
    }
    for delta in [0.1, 0.05, 0.01, 1e-3] {
        println!("mass within {delta} of the boundary: {:.5}", boundary_mass(200_000, delta, 5)?);
    }
    Ok(())
}

fn main() -> su2gap::Result<()> {
    run_example()
}
