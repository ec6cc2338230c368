from collections import namedtuple
import io
import json

import pandas as pd


# `document` is the nested JSON object, `rows` the flat dotted-key records
# behind the table and CSV formats
Report = namedtuple('Report', ('document', 'rows'))

CSV_FLOAT_FORMAT = '%.17g'


def flatten(d, prefix='', exclude=()):
  """Nested dicts (and lists of scalars) to one level of dotted keys."""
  flat = {}
  for key, value in d.items():
    if key in exclude:
      continue
    name = prefix + str(key)
    if isinstance(value, dict):
      flat.update(flatten(value, name + '.', exclude))
    elif isinstance(value, (list, tuple)):
      if all(not isinstance(v, (list, tuple, dict)) for v in value):
        for i, v in enumerate(value):
          flat['{}.{}'.format(name, i)] = v
    else:
      flat[name] = value
  return flat

def single_report(document, exclude=()):
  return Report(document, [flatten(document, exclude=exclude)])

def _format_value(value):
  if value is None:
    return 'null'
  if isinstance(value, float):
    return repr(value)
  return str(value)

def format_table(report: Report) -> str:
  if len(report.rows) == 1:
    row = report.rows[0]
    width = max(len(k) for k in row) if row else 0
    return '\n'.join('{}  {}'.format(k.ljust(width), _format_value(v)) for k, v in row.items()) + '\n'
  return pd.DataFrame(report.rows).to_string(index=False) + '\n'

def format_csv(report: Report) -> str:
  buffer = io.StringIO()
  pd.DataFrame(report.rows).to_csv(buffer, index=False, float_format=CSV_FLOAT_FORMAT)
  return buffer.getvalue()

def format_json(report: Report) -> str:
  return json.dumps(report.document, sort_keys=True, indent=2, allow_nan=False) + '\n'
