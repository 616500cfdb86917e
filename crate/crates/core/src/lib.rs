pub mod graph;
pub mod structio;
pub mod structures;
pub mod detect;
pub mod oracle;
pub mod params;
pub mod construct;
pub mod gen;

#[cfg(test)]
pub(crate) fn gen_test_random(n: usize, p: f64, seed: u64) -> graph::Graph {
    gen::gnp(n, p, seed)
}
