//! Order-statistic densities, selection probabilities and throughput bounds.

mod bounds;
mod density;
mod probability;

pub use bounds::{
    bounds_from_distribution, selection_distribution, throughput_bounds, ProbabilityModel,
    ThroughputBounds,
};
pub use density::{
    all_relays_min_pdf, joint_pdf_uv, joint_pdf_uv_uncorrected, order_stat_joint_cdf_dv,
    order_stat_joint_cdf_dv_uncorrected, order_stat_joint_pdf, order_stat_pdf, order_stat_pdfs,
    sum_exp_cdf, sum_exp_pdf,
};
pub use probability::{
    event_distribution_closed, event_distribution_numeric, event_distribution_uncorrected,
    outage_exact, pr_selection_closed, pr_selection_exact, pr_selection_numeric,
    pr_selection_numeric_uncorrected, pr_selection_uncorrected, selection_distribution_exact,
    SelectionDistribution,
};
