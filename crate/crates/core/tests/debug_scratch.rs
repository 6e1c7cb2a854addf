use rednets::gf::rows_independent;
use rednets::nets::{generate_net, random_generating_set};
use rednets::quality::{min_t, oracle_min_t};

// Naive rho: enumerate every composition of every level with fresh
// independence checks.
fn naive_rho(g: &rednets::GeneratingSet) -> usize {
    let m = g.matrix_size();
    let s = g.dimension();
    'level: for d in 1..=m {
        let mut split = vec![0usize; s];
        split[0] = d;
        loop {
            let mut rows: Vec<Vec<u8>> = Vec::new();
            for (j, &dj) in split.iter().enumerate() {
                for i in 0..dj {
                    rows.push(g.matrix(j).row(i).to_vec());
                }
            }
            if !rows_independent(&rows, g.modulus()).unwrap() {
                return d - 1;
            }
            // next composition
            let first_pos = split.iter().position(|&x| x > 0).unwrap();
            if first_pos + 1 >= s {
                continue 'level;
            }
            let head = split[first_pos];
            split[first_pos] = 0;
            split[0] = head - 1;
            split[first_pos + 1] += 1;
        }
    }
    m
}

#[test]
fn probe_rho_directly() {
    let g = random_generating_set(2, 5, 2, 1000).unwrap();
    let rho = rednets::quality::rho_m(&g).unwrap();
    println!("rho_m reports {rho}");
    // Check the offending system by hand.
    let rows = vec![
        g.matrix(0).row(0).to_vec(),
        g.matrix(0).row(1).to_vec(),
    ];
    println!(
        "rows 0,1 of matrix 0 independent: {}",
        rows_independent(&rows, 2).unwrap()
    );
}

#[test]
fn cross_check_seed0() {
    let g = random_generating_set(2, 5, 2, 1000).unwrap();
    for j in 0..2 {
        println!("matrix {j}:");
        for i in 0..5 {
            println!("  {:?}", g.matrix(j).row(i));
        }
    }
    let nr = naive_rho(&g);
    let fast_t = min_t(&g).unwrap();
    let net = generate_net(&g).unwrap();
    let oracle_t = oracle_min_t(&net).unwrap();
    println!("naive_rho={nr} fast_t={fast_t} oracle_t={oracle_t} m=5");
    assert_eq!(5 - nr, fast_t, "fast rho disagrees with naive rho");
    assert_eq!(fast_t, oracle_t, "oracle disagrees");
}
