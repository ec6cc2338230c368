# Pulls finished sweep runs into one table, one row per run

import sys

import pandas as pd
import wandb

sys.path.append('../src')

from unruh_gas.utils.constants import WANDB_ENTITY, WANDB_PROJECT


SUMMARY_VARS = ['sim_fitted_log_growth', 'sim_log_gain', 'sim_decorrelation_collisions']
CONFIG_VARS = ['mode', 'particles', 'packing', 'perturbation', 'seed']


def import_runs(entity=WANDB_ENTITY, project=WANDB_PROJECT):
    api = wandb.Api()
    path = project if entity is None else entity + '/' + project
    rows = []
    for run in api.runs(path):
        if run.state != 'finished':
            continue
        row = {'name': run.name, 'sweep': run.sweep.id if run.sweep else None}
        row.update({k: run.config.get(k) for k in CONFIG_VARS})
        row.update({k: run.summary.get(k) for k in SUMMARY_VARS})
        rows.append(row)
    return pd.DataFrame(rows)


if __name__ == '__main__':
    runs_df = import_runs()
    # Measured growth per collision against the geometric prediction ln(2 lambda / r)
    runs_df['growth_over_log_gain'] = runs_df['sim_fitted_log_growth'] / runs_df['sim_log_gain']
    runs_df.to_csv('sweep_runs.csv', index=False, float_format='%.17g')
    print(runs_df.groupby(['mode', 'packing'])[['sim_fitted_log_growth', 'sim_log_gain']].mean())
