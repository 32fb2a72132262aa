"""Backtracking interpreter for the command subset.

Commands are tuples:

    ("call", name)            apply one rule, fail if no match
    ("set", [name, ...])      try rules in textual order, first applicable
    ("seq", [cmd, ...])       run in order; fail/break propagate
    ("loop", cmd)             as long as possible; never fails
    ("if", c, t, e)           run c in a frame, always roll back, branch
    ("try", c, t, e)          run c in a frame, keep its effect on success
    ("break",) ("fail",) ("skip",)
    ("proc", name)            resolved away before execution

Loop iterations and if/try conditions run inside undo-log frames.  A rule
call or rule set is atomic (it mutates nothing when it fails), so loops
over bare rule calls skip the frame entirely; together with the log being
inactive outside frames this keeps straight-line loops log-free.

A break signal is absorbed by the innermost enclosing loop, committing
the current iteration's changes.  A break escaping an if/try condition
counts as failure of the condition.
"""

import gc

from .matching import build_search_plan, _apply_images, REFLECTING
from .rules import validate_rule
from .undolog import UndoLog

SUCCESS = 0
FAIL = 1
BREAK = 2


class ProgramError(Exception):
    """Validation failure; carries a list of diagnostics."""

    def __init__(self, diagnostics):
        super().__init__("; ".join(diagnostics))
        self.diagnostics = list(diagnostics)


class StepLimitExceeded(Exception):
    pass


class Program:
    """Validated rules, procedures and the Main command."""

    def __init__(self, rules, procedures, main):
        self.rules = dict(rules)          # name -> Rule
        self.procedures = dict(procedures)  # name -> command
        self.main = main
        diags = []
        for rule in self.rules.values():
            diags.extend(validate_rule(rule))
        if main is None:
            diags.append("program has no Main")
        else:
            self.main = self._expand(main, diags, ())
            _check_break(self.main, False, diags)
        if diags:
            raise ProgramError(diags)

    def _expand(self, cmd, diags, stack):
        tag = cmd[0]
        if tag == "call":
            name = cmd[1]
            if name in self.rules:
                return cmd
            if name in self.procedures:
                return self._expand(("proc", name), diags, stack)
            diags.append("unknown rule or procedure %r" % name)
            return ("skip",)
        if tag == "proc":
            name = cmd[1]
            if name in stack:
                diags.append("recursive procedure %r" % name)
                return ("skip",)
            body = self.procedures.get(name)
            if body is None:
                diags.append("unknown procedure %r" % name)
                return ("skip",)
            return self._expand(body, diags, stack + (name,))
        if tag == "set":
            for name in cmd[1]:
                if name not in self.rules:
                    diags.append("rule set references unknown rule %r" % name)
            return cmd
        if tag == "seq":
            return ("seq", [self._expand(c, diags, stack) for c in cmd[1]])
        if tag == "loop":
            return ("loop", self._expand(cmd[1], diags, stack))
        if tag in ("if", "try"):
            return (tag,
                    self._expand(cmd[1], diags, stack),
                    self._expand(cmd[2], diags, stack),
                    self._expand(cmd[3], diags, stack))
        if tag in ("break", "fail", "skip"):
            return cmd
        diags.append("unknown command %r" % (tag,))
        return ("skip",)


def _check_break(cmd, in_loop, diags):
    tag = cmd[0]
    if tag == "break":
        if not in_loop:
            diags.append("break outside of any loop")
    elif tag == "seq":
        for c in cmd[1]:
            _check_break(c, in_loop, diags)
    elif tag == "loop":
        _check_break(cmd[1], True, diags)
    elif tag in ("if", "try"):
        # a break inside the condition is absorbed by the condition itself
        _check_break(cmd[1], True, diags)
        _check_break(cmd[2], in_loop, diags)
        _check_break(cmd[3], in_loop, diags)


class Interpreter:
    def __init__(self, program, graph, mode=REFLECTING, step_limit=None):
        self.program = program
        self.graph = graph
        self.mode = mode
        self.step_limit = step_limit
        self.applications = 0
        self.log = UndoLog()
        graph.log = self.log
        self._compiled = {}
        for name, rule in program.rules.items():
            plan = build_search_plan(rule, mode)
            self._compiled[name] = (rule, plan.runner(mode))

    def run(self):
        """Execute Main; True on success, False on failure.

        The collector is suspended for the duration: the graph's intrusive
        lists are all reference cycles, and repeated generational scans of
        a large live graph dominate runtime otherwise.
        """
        was_enabled = gc.isenabled()
        gc.disable()
        try:
            status = self._exec(self.program.main)
        finally:
            if was_enabled:
                gc.enable()
        return status != FAIL

    # -- command dispatch --------------------------------------------------

    def _exec(self, cmd):
        tag = cmd[0]
        if tag == "call":
            return self._apply_one(cmd[1])
        if tag == "set":
            for name in cmd[1]:
                if self._apply_one(name) == SUCCESS:
                    return SUCCESS
            return FAIL
        if tag == "seq":
            for c in cmd[1]:
                st = self._exec(c)
                if st != SUCCESS:
                    return st
            return SUCCESS
        if tag == "loop":
            return self._exec_loop(cmd[1])
        if tag == "if":
            return self._exec_if(cmd)
        if tag == "try":
            return self._exec_try(cmd)
        if tag == "skip":
            return SUCCESS
        if tag == "fail":
            return FAIL
        if tag == "break":
            return BREAK
        raise ProgramError(["unexecutable command %r" % (tag,)])

    def _apply_one(self, name):
        rule, runner = self._compiled[name]
        g = self.graph
        if not runner.find(g):
            return FAIL
        if self.step_limit is not None:
            self.applications += 1
            if self.applications > self.step_limit:
                raise StepLimitExceeded(name)
        _apply_images(g, rule, runner.node_img, runner.edge_img, runner.env)
        return SUCCESS

    def _exec_loop(self, body):
        tag = body[0]
        if tag == "call":
            # atomic body: a failed attempt mutates nothing, no frame needed
            rule, runner = self._compiled[body[1]]
            g = self.graph
            find = runner.find
            limit = self.step_limit
            while find(g):
                if limit is not None:
                    self.applications += 1
                    if self.applications > limit:
                        raise StepLimitExceeded(body[1])
                _apply_images(g, rule, runner.node_img, runner.edge_img,
                              runner.env)
            return SUCCESS
        if tag == "set":
            while self._exec(body) == SUCCESS:
                pass
            return SUCCESS
        g = self.graph
        log = self.log
        while True:
            log.open_frame()
            st = self._exec(body)
            if st == FAIL:
                log.rollback_frame(g)
                return SUCCESS
            log.commit_frame(g)
            if st == BREAK:
                return SUCCESS

    def _exec_if(self, cmd):
        g = self.graph
        log = self.log
        log.open_frame()
        st = self._exec(cmd[1])
        log.rollback_frame(g)
        return self._exec(cmd[2] if st == SUCCESS else cmd[3])

    def _exec_try(self, cmd):
        g = self.graph
        log = self.log
        log.open_frame()
        st = self._exec(cmd[1])
        if st == SUCCESS:
            log.commit_frame(g)
            return self._exec(cmd[2])
        log.rollback_frame(g)
        return self._exec(cmd[3])


def run_program(program, graph, mode=REFLECTING, step_limit=None):
    return Interpreter(program, graph, mode, step_limit).run()
