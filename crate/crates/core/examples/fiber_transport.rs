// Pairs on a commutator-trace fiber, pushed through (a, b) -> (a^2, b).

use su2gap::measure::{fiber_transport_demo, sample_fiber};

pub fn run_example() -> su2gap::Result<()> {
    let fiber = sample_fiber(0.5, 5, 6)?;
    for p in &fiber.pairs {
        println!("tr a = {:+.6}, tr [a,b] = {:+.12}", p.a.trace(), p.commutator().trace());
    }
    for t in [-1.0, 0.0, 1.0, 1.9] {
        let h = fiber_transport_demo(t, 20_000, 16, 6)?;
        println!(
            "t = {t:4}: transported into [{:+.4}, {:+.4}], expected [{:+.4}, {:+.4}]",
            h.min, h.max, h.expected.lo, h.expected.hi
        );
    }
    Ok(())
}

fn main() -> su2gap::Result<()> {
    run_example()
}
