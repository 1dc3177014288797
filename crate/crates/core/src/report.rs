//! CSV emitters. Headers are always written; floats use fixed formats so
//! identical inputs give byte-identical files.

use std::io::{self, Write};

use crate::analytics::{SelectionDistribution, ThroughputBounds};
use crate::modulation::ThresholdTable;
use crate::signaling::SignalingBudget;
use crate::simulator::SweepResult;

pub const THRESHOLDS_HEADER: &str = "level,modulation,threshold_db,threshold_linear";
pub const THROUGHPUT_HEADER: &str = "scheme,rho_db,trials,throughput,ser,outage,seed";
pub const SER_HEADER: &str = "scheme,rho_db,symbols,symbol_errors,ser,ser_se";
pub const HISTOGRAM_HEADER: &str = "scheme,rho_db,A,k,count";
pub const PR_HEADER: &str = "rho_db,A,k,pr";
pub const BOUNDS_HEADER: &str = "rho_db,zeta_lower,zeta_upper,outage";
pub const SIGNALING_HEADER: &str = "scheme,duplex,N,L,bits";

pub fn write_thresholds<W: Write>(mut w: W, table: &ThresholdTable) -> io::Result<()> {
    writeln!(w, "{THRESHOLDS_HEADER}")?;
    for ms in table.schemes() {
        let level = ms.level();
        writeln!(
            w,
            "{level},{},{:.4},{:.6}",
            ms.name(),
            table.threshold_db(level),
            table.threshold(level)
        )?;
    }
    Ok(())
}

pub fn write_throughput<W: Write>(mut w: W, sweeps: &[SweepResult]) -> io::Result<()> {
    writeln!(w, "{THROUGHPUT_HEADER}")?;
    for sweep in sweeps {
        for p in &sweep.points {
            writeln!(
                w,
                "{},{:.2},{},{:.6},{:.6e},{:.6},{}",
                sweep.scheme,
                p.rho_db,
                p.stats.trials,
                p.stats.throughput(),
                p.stats.ser(),
                p.stats.outage(),
                sweep.seed
            )?;
        }
    }
    Ok(())
}

pub fn write_ser<W: Write>(mut w: W, sweeps: &[SweepResult]) -> io::Result<()> {
    writeln!(w, "{SER_HEADER}")?;
    for sweep in sweeps {
        for p in &sweep.points {
            writeln!(
                w,
                "{},{:.2},{},{},{:.6e},{:.6e}",
                sweep.scheme,
                p.rho_db,
                p.stats.symbols,
                p.stats.symbol_errors,
                p.stats.ser(),
                p.stats.ser_se()
            )?;
        }
    }
    Ok(())
}

pub fn write_histogram<W: Write>(mut w: W, sweeps: &[SweepResult]) -> io::Result<()> {
    writeln!(w, "{HISTOGRAM_HEADER}")?;
    for sweep in sweeps {
        for p in &sweep.points {
            for (a, k, _) in p.stats.selection().iter() {
                writeln!(
                    w,
                    "{},{:.2},{a},{k},{}",
                    sweep.scheme,
                    p.rho_db,
                    p.stats.count(a, k)
                )?;
            }
        }
    }
    Ok(())
}

/// `(rho_db, distribution)` rows for every `(A, k)`.
pub fn write_pr<W: Write>(mut w: W, rows: &[(f64, SelectionDistribution)]) -> io::Result<()> {
    writeln!(w, "{PR_HEADER}")?;
    for (rho_db, dist) in rows {
        for (a, k, p) in dist.iter() {
            writeln!(w, "{rho_db:.2},{a},{k},{p:.9e}")?;
        }
    }
    Ok(())
}

pub fn write_bounds<W: Write>(mut w: W, rows: &[(f64, ThroughputBounds, f64)]) -> io::Result<()> {
    writeln!(w, "{BOUNDS_HEADER}")?;
    for (rho_db, b, outage) in rows {
        writeln!(w, "{rho_db:.2},{:.6},{:.6},{outage:.6e}", b.lower, b.upper)?;
    }
    Ok(())
}

pub fn write_signaling<W: Write>(mut w: W, rows: &[SignalingBudget]) -> io::Result<()> {
    writeln!(w, "{SIGNALING_HEADER}")?;
    for b in rows {
        writeln!(
            w,
            "{},{},{},{},{}",
            b.scheme, b.duplex, b.num_relays, b.levels, b.total_bits
        )?;
    }
    Ok(())
}
