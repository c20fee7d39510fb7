from ._isotwirl import (
    FormFactors,
    cb_spectrum,
    gde_averages,
    gue_averages,
    mc_twirl,
    probe,
    probe_names,
    run_criterion,
    sff_explicit,
    sff_stabilizer,
    time_grid,
    toric_sff,
    weingarten,
    xi_closed_form,
)

__all__ = [
    "FormFactors",
    "cb_spectrum",
    "gde_averages",
    "gue_averages",
    "mc_twirl",
    "probe",
    "probe_names",
    "run_criterion",
    "sff_explicit",
    "sff_stabilizer",
    "time_grid",
    "toric_sff",
    "weingarten",
    "xi_closed_form",
]
