"""Label values and patterns.

Host labels are tuples of atoms, where an atom is an int or a str.
Rule labels are tuples mixing atoms with typed variables; at most one
variable of type list may occur per label.  Bindings map variable names
to atom tuples (singleton tuples for non-list variables).
"""

INT = "int"
STRING = "string"
ATOM = "atom"
LIST = "list"

VAR_TYPES = (INT, STRING, ATOM, LIST)

EMPTY = ()

NO_MATCH = None


class Var:
    __slots__ = ("name", "vtype")

    def __init__(self, name, vtype):
        if vtype not in VAR_TYPES:
            raise ValueError("unknown variable type %r" % (vtype,))
        self.name = name
        self.vtype = vtype

    def __repr__(self):
        return "Var(%s:%s)" % (self.name, self.vtype)

    def __eq__(self, other):
        return (
            type(other) is Var
            and self.name == other.name
            and self.vtype == other.vtype
        )

    def __hash__(self):
        return hash((self.name, self.vtype))


def atom_fits(atom, vtype):
    if vtype == INT:
        return type(atom) is int
    if vtype == STRING:
        return type(atom) is str
    # atom (and list, elementwise) admit both
    return type(atom) is int or type(atom) is str


def list_var_index(pattern):
    """Index of the single list-typed variable, or -1.

    Raises ValueError if more than one list variable occurs.
    """
    found = -1
    for i, item in enumerate(pattern):
        if type(item) is Var and item.vtype == LIST:
            if found >= 0:
                raise ValueError("more than one list variable in label")
            found = i
    return found


def match_into(pattern, value, env, trail):
    """Match pattern against value, extending env in place.

    Variable names newly bound are appended to trail so the caller can
    undo them on backtracking.  Returns True on success; on failure the
    bindings added so far remain on the trail and must be rolled back by
    the caller.
    """
    li = -1
    for i, item in enumerate(pattern):
        if type(item) is Var and item.vtype == LIST:
            li = i
            break
    if li < 0:
        if len(pattern) != len(value):
            return False
        return _match_items(pattern, value, env, trail)
    fixed = len(pattern) - 1
    if len(value) < fixed:
        return False
    if not _match_items(pattern[:li], value[:li], env, trail):
        return False
    suffix = pattern[li + 1:]
    if suffix and not _match_items(suffix, value[len(value) - len(suffix):], env, trail):
        return False
    mid = value[li:len(value) - len(suffix)]
    name = pattern[li].name
    bound = env.get(name)
    if bound is not None:
        return bound == mid
    env[name] = mid
    trail.append(name)
    return True


def _match_items(items, atoms, env, trail):
    for item, atom in zip(items, atoms):
        if type(item) is Var:
            if not atom_fits(atom, item.vtype):
                return False
            bound = env.get(item.name)
            if bound is not None:
                if bound != (atom,):
                    return False
            else:
                env[item.name] = (atom,)
                trail.append(item.name)
        elif item != atom or type(item) is not type(atom):
            return False
    return True


def match_label(pattern, value, env=None):
    """Functional matching: returns an extended binding dict or NO_MATCH."""
    out = dict(env) if env else {}
    trail = []
    if match_into(tuple(pattern), tuple(value), out, trail):
        return out
    return NO_MATCH


def instantiate(pattern, env):
    """Replace every variable by its bound fragment, concatenating in order."""
    out = []
    for item in pattern:
        if type(item) is Var:
            try:
                out.extend(env[item.name])
            except KeyError:
                raise KeyError("unbound variable %r" % item.name) from None
        else:
            out.append(item)
    return tuple(out)


def label_vars(pattern):
    return [item for item in pattern if type(item) is Var]
