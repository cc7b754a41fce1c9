//! Seeded samplers and Monte Carlo checks of moment formulas.
//!
//! Draws are generated in fixed-size chunks. Chunk `i` uses a ChaCha8
//! generator seeded with the user seed on stream `i`, so the output
//! depends only on `(recipe, n, seed)`, whether chunks run in parallel or
//! not.

mod mc;
mod recipe;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

pub use mc::{
    harmonic_drift, ks_two_sample, mc_moment, moment_estimate, verify_entry, KsResult, McEstimate, SOutcome,
    SStatus, VerificationReport, KS_C_001, Z_MULTIPLIER,
};
pub use recipe::{positive_stable, symmetric_stable, Leaf, LeafSampler, SampleRecipe, Sampler};

/// Draws per chunk.
pub const CHUNK: usize = 1 << 14;

fn chunk_rng(seed: u64, chunk: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64);
    rng
}

fn fill_chunk(sampler: &Sampler, seed: u64, chunk: usize, len: usize) -> Vec<f64> {
    let mut rng = chunk_rng(seed, chunk);
    (0..len).map(|_| sampler.draw(&mut rng)).collect()
}

fn chunk_lengths(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n.div_ceil(CHUNK)).map(move |c| (c, CHUNK.min(n - c * CHUNK)))
}

/// `n` draws of `recipe`, reproducible from `seed`. Chunks run in parallel.
pub fn sample(recipe: &SampleRecipe, n: usize, seed: u64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::Validation("sample size must be at least 1".into()));
    }
    let sampler = recipe.compile()?;
    let chunks: Vec<(usize, usize)> = chunk_lengths(n).collect();
    let parts: Vec<Vec<f64>> = chunks.par_iter().map(|&(c, len)| fill_chunk(&sampler, seed, c, len)).collect();
    Ok(parts.concat())
}

/// Same stream as [`sample`], generated on the calling thread.
pub fn sample_sequential(recipe: &SampleRecipe, n: usize, seed: u64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::Validation("sample size must be at least 1".into()));
    }
    let sampler = recipe.compile()?;
    let mut out = Vec::with_capacity(n);
    for (c, len) in chunk_lengths(n) {
        out.extend(fill_chunk(&sampler, seed, c, len));
    }
    Ok(out)
}

/// One value per line.
pub fn to_csv(xs: &[f64]) -> String {
    let mut s = String::with_capacity(xs.len() * 20);
    for x in xs {
        s.push_str(&format!("{x:?}\n"));
    }
    s
}

/// One `{"i": .., "x": ..}` object per line.
pub fn to_jsonl(xs: &[f64]) -> String {
    let mut s = String::with_capacity(xs.len() * 30);
    for (i, x) in xs.iter().enumerate() {
        let v = serde_json::json!({ "i": i, "x": crate::json_f64(*x) });
        s.push_str(&v.to_string());
        s.push('\n');
    }
    s
}
