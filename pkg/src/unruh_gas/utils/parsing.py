from .errors import DomainError


def parse_var(s):
  """Splits one `key=value` item; the value is kept as text."""
  if '=' not in s:
    raise DomainError('expected KEY=VALUE, got {!r}'.format(s))
  items = s.split('=')
  key = items[0].strip()
  value = '='.join(items[1:]).strip()
  if not key:
    raise DomainError('empty key in {!r}'.format(s))
  return (key, value)

def parse_vars(items):
  d = {}
  if items:
    for item in items:
      key, value = parse_var(item)
      d[key] = value
  return d
