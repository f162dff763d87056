from .agent import ConstructionsAgent
from .realizations import (
    choice_functions,
    equivalent,
    grids_to_hidden,
    realize_sd,
    realize_sv,
    realize_wd_li,
    transform_li_loc_to_sd,
    upgrade_lambda_space,
)
