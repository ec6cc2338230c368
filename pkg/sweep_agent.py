import argparse
import sys

import wandb

sys.path.append('src')

from unruh_gas.experiments.argument_handling import make_and_parse_args
from unruh_gas.experiments.commands import cmd_simulate
from unruh_gas.experiments.register import create_formatter


# Sweep parameters arrive as --key=value flags of the simulate command
if __name__ == '__main__':
    args = make_and_parse_args(['simulate'] + sys.argv[1:])
    wandb.init(config=vars(args))
    args = argparse.Namespace(**wandb.config)
    args.wandb_mode = 'online'
    report = cmd_simulate(args)
    print(create_formatter('json')(report))
    wandb.finish()
