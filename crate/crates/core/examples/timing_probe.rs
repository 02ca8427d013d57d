use qve_core::exact::{engine_metrics_exact, Boundary, QubitChainSpec};
use std::time::Instant;

fn main() {
    for &(n, g) in &[(10usize, 1.0f64), (11, 1.0), (12, 0.1), (12, 1.0), (12, 10.0)] {
        let spec = QubitChainSpec::uniform(n, 1.0, g, Boundary::Closed).unwrap();
        let t = Instant::now();
        let m = engine_metrics_exact(&spec).unwrap();
        println!(
            "N={n:2} g={g:5}: W={:.12} gap={:.12} sigma={:.12}  [{:?}]",
            m.work, m.gap, m.std_dev, t.elapsed()
        );
    }
}
