//! Gnuplot scripts for the region map and the potential gallery. The scripts
//! read the CSV files written next to them.

use sususy::ScanConfig;

/// Shaded cells for regular points, white for singular ones, with the
/// particular-solution curve on top.
pub fn figure1_script(cfg: &ScanConfig) -> String {
    let hw = 0.5 * (cfg.beta_max - cfg.beta_min) / cfg.n_beta as f64;
    let hh = 0.5 * (cfg.dbeta_max - cfg.dbeta_min) / cfg.n_dbeta as f64;
    format!(
        r##"# Regular (shaded) and singular (white) initial points of the beta-equation.
# Usage: gnuplot figure1.gp  ->  figure1.png
set terminal pngcairo size 900,700
set output 'figure1.png'
set datafile separator ','
set xlabel "beta(0)"
set ylabel "beta'(0)"
set xrange [{bmin}:{bmax}]
set yrange [{dmin}:{dmax}]
set key outside top center horizontal
set style fill solid 1.0 noborder
plot 'region.csv' every ::1 using 3:(strcol(5) eq "regular" ? $4 : 1/0):({hw}):({hh}) \
       with boxxyerror lc rgb "#b0b0b0" title "no singularity", \
     'curve.csv' every ::1 using 1:2 with lines lw 2 lc rgb "black" title "beta'(0) = -2 + beta(0)^2"
"##,
        bmin = cfg.beta_min,
        bmax = cfg.beta_max,
        dmin = cfg.dbeta_min,
        dmax = cfg.dbeta_max,
    )
}

/// One line per `β'(0)` column of `figure2.csv`.
pub fn figure2_script(beta0: f64, columns: usize) -> String {
    format!(
        r#"# Partner potentials V~(x) + 4 at beta(0) = {beta0}, one curve per beta'(0).
# Usage: gnuplot figure2.gp  ->  figure2.png
set terminal pngcairo size 900,700
set output 'figure2.png'
set datafile separator ','
set key autotitle columnhead
set xlabel "x"
set ylabel "V~(x) + 4"
set yrange [-6:30]
plot for [i=2:{last}] 'figure2.csv' using 1:i with lines lw 2
"#,
        last = columns + 1,
    )
}
