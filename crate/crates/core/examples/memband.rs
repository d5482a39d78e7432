//! Throwaway microbenchmark for solver design: sparse scatter and byte-table
//! accumulation throughput at the 1e5 scale.

use std::time::Instant;

fn main() {
    let n = 100_000usize;
    let nnz = 900_000usize;
    // Pseudo-random coordinates, block-sorted.
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut rnd = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut coords: Vec<(u32, u32)> = (0..nnz)
        .map(|_| ((rnd() % n as u64) as u32, (rnd() % n as u64) as u32))
        .collect();
    coords.sort_unstable_by_key(|&(r, c)| ((r as u64 / 256) << 32) | (c as u64 / 256));

    let x: Vec<u64> = (0..n).map(|_| rnd()).collect();
    let mut out = vec![0u64; n];

    let reps = 20;
    let t = Instant::now();
    for _ in 0..reps {
        for &(r, c) in &coords {
            out[r as usize] ^= x[c as usize];
        }
    }
    let per = t.elapsed() / reps;
    eprintln!("sparse scatter {nnz} coords: {per:?} per pass");

    // Byte-table accumulate: dot(a, b) structure.
    let a: Vec<u64> = (0..n).map(|_| rnd()).collect();
    let b: Vec<u64> = (0..n).map(|_| rnd()).collect();
    let t = Instant::now();
    let mut acc = 0u64;
    for _ in 0..reps {
        let mut tables = vec![[0u64; 256]; 8];
        for k in 0..n {
            let av = a[k];
            let bv = b[k];
            for p in 0..8 {
                tables[p][((av >> (8 * p)) & 0xff) as usize] ^= bv;
            }
        }
        acc ^= tables[3][17];
    }
    let per = t.elapsed() / reps;
    eprintln!("byte-table dot pass (n={n}): {per:?}   [{acc}]");

    // Rotate-trick dot for comparison.
    let t = Instant::now();
    for _ in 0..reps {
        let mut m = [0u64; 64];
        for r in 0..64u32 {
            let mut w = 0u64;
            for k in 0..n {
                w ^= a[k] & b[k].rotate_right(r);
            }
            m[r as usize] = w;
        }
        acc ^= m[5];
    }
    let per = t.elapsed() / reps;
    eprintln!("rotate dot pass (n={n}): {per:?}   [{acc}]");

    // muladd: out ^= b * m via byte tables (precombined 8-bit lookup).
    let m: Vec<u64> = (0..64).map(|_| rnd()).collect();
    let t = Instant::now();
    for _ in 0..reps {
        // tables[p][v] = xor of rows 8p+i of m for bits i of v
        let mut tables = vec![[0u64; 256]; 8];
        for p in 0..8 {
            for v in 1usize..256 {
                let lsb = v.trailing_zeros() as usize;
                tables[p][v] = tables[p][v & (v - 1)] ^ m[8 * p + lsb];
            }
        }
        for k in 0..n {
            let bv = b[k];
            let mut acc2 = 0u64;
            for p in 0..8 {
                acc2 ^= tables[p][((bv >> (8 * p)) & 0xff) as usize];
            }
            out[k] ^= acc2;
        }
    }
    let per = t.elapsed() / reps;
    eprintln!("table muladd pass (n={n}): {per:?}   [{}]", out[42]);
}
