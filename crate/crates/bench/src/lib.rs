//! Shared fixtures for the benchmarks.

use relaylink_core::channel::{draw_channels, hop_snrs, substream, NetworkConfig, StreamKind};
use relaylink_core::special::db_to_linear;

pub fn network(num_relays: usize, rho_db: f64) -> NetworkConfig {
    NetworkConfig {
        num_relays,
        rho: db_to_linear(rho_db),
        ser_target: 1e-4,
        block_bits: 1000,
        levels: 4,
    }
}

/// `count` reproducible `(gamma1, gamma2)` draws.
pub fn instances(num_relays: usize, rho_db: f64, count: u64) -> Vec<(Vec<f64>, Vec<f64>)> {
    let cfg = network(num_relays, rho_db);
    (0..count)
        .map(|t| {
            hop_snrs(
                &cfg,
                &draw_channels(&cfg, &mut substream(17, 0, t, StreamKind::Channel)),
            )
        })
        .collect()
}
