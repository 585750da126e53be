use std::io::Write;

use qr_core::IterationRecord;

pub const TRACE_HEADER: [&str; 9] = [
    "k",
    "s",
    "t",
    "f",
    "gamma",
    "gap",
    "q_xhat",
    "lower_bound",
    "delta_k",
];

pub const TRACE_HELP: &str = "Trace CSV columns, in order:\n  \
k,s,t,f,gamma,gap,q_xhat,lower_bound,delta_k\n\
gamma is empty on the final row. gap and delta_k use scientific notation.";

pub fn write_trace<W: Write>(trace: &[IterationRecord<f64>], w: W) -> csv::Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(TRACE_HEADER)?;
    for rec in trace {
        wr.write_record([
            rec.k.to_string(),
            rec.s.to_string(),
            rec.t.to_string(),
            rec.f.to_string(),
            rec.gamma.map(|g| g.to_string()).unwrap_or_default(),
            format!("{:e}", rec.gap),
            rec.q_xhat.to_string(),
            rec.lower_bound.to_string(),
            format!("{:e}", rec.delta_k),
        ])?;
    }
    wr.flush()?;
    Ok(())
}
