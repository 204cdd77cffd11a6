// Re-run the incompatible-triple discovery over the plane catalog and
// print the first instance found, with its exhaustion statistics.
fn main() {
    let t0 = std::time::Instant::now();
    match toric::suite::discover_incompatible_triple(8) {
        Ok(Some((triple, stats))) => {
            println!("FOUND in {:?}", t0.elapsed());
            println!("factors: {:?}", triple.factors);
            println!(
                "rays: {:?}",
                triple
                    .fan
                    .rays()
                    .iter()
                    .map(|r| (
                        i64::try_from(&r.0[0]).unwrap(),
                        i64::try_from(&r.0[1]).unwrap()
                    ))
                    .collect::<Vec<_>>()
            );
            for d in &triple.divisors {
                println!(
                    "divisor: {:?}",
                    d.coeffs.iter().map(|c| i64::try_from(c).unwrap()).collect::<Vec<_>>()
                );
            }
            println!("stats: {stats:?}");
        }
        Ok(None) => println!("NONE found in {:?}", t0.elapsed()),
        Err(e) => println!("ERROR: {e}"),
    }
}
