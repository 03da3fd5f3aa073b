#
#  Lincense: Academic Free License (AFL) v3.0
#
"""
Data logging for solver iterations, moment enumerations and verification
suites.

Values are appended under dotted names (e.g. ``"sum_norm.gap"``). Handlers
are registered for names or shell-style patterns (``"sum_norm.*"``,
``"*"``) and receive every value whose name matches::

    from freelp.utils.datalog import dlog, TextPrinter, StoreToTxt

    dlog.set_handler(['sum_norm.upper', 'sum_norm.gap'], TextPrinter)
    dlog.set_handler('*', StoreToTxt, 'run.log')

Only rank 0 of the communicator logs. Names nobody listens to cost a dict
lookup; use :meth:`DataLog.ignored` to skip computing values for them.
"""
from abc import ABCMeta, abstractmethod
from fnmatch import fnmatchcase
from functools import wraps
from time import strftime

from mpi4py import MPI

from .parallel import pprint
from .autotable import AutoTable

PROGRESS_WIDTH = 40


class DataHandler(metaclass=ABCMeta):
    """ Receives the values of the names it is registered for. """

    @abstractmethod
    def append(self, name, value):
        pass

    def append_all(self, values):
        for name, value in values.items():
            self.append(name, value)

    def close(self):
        pass


class Collect(DataHandler):
    """ Keep (name, value) pairs in memory, in arrival order. """

    def __init__(self):
        self.records = []

    def append(self, name, value):
        self.records.append((name, value))

    def values(self, name):
        return [v for n, v in self.records if n == name]


class StoreToH5(DataHandler):
    """ One HDF5 table per name; dots become underscores. """

    def __init__(self, destination):
        """
        :param destination: file name, or an open AutoTable that stays open
            when the handler is closed
        """
        if isinstance(destination, AutoTable):
            self.table, self.owned = destination, False
        elif isinstance(destination, str):
            self.table, self.owned = AutoTable(destination), True
        else:
            raise TypeError("Expects an AutoTable instance or a file name, got %r" % (destination, ))

    def __repr__(self):
        return "StoreToH5(%s)" % self.table.fname

    def append(self, name, value):
        self.table.append(name.replace('.', '_'), value)

    def close(self):
        if self.owned:
            self.table.close()


class StoreToTxt(DataHandler):
    """ ``name = value`` lines, flushed as they come. """

    def __init__(self, fname):
        if not isinstance(fname, str):
            raise TypeError("Expects a file name, got %r" % (fname, ))
        self.txt = open(fname, 'w')

    def append(self, name, value):
        print("%s = %s" % (name, value), file=self.txt, flush=True)

    def close(self):
        self.txt.close()


class TextPrinter(DataHandler):
    def append(self, name, value):
        pprint("  %-24s %s" % (name, value))


def root_only(method):
    """ Run *method* on rank 0 of ``self.comm`` only; other ranks get None. """
    @wraps(method)
    def wrapped(self, *args, **kwargs):
        if self.comm.rank != 0:
            return None
        return method(self, *args, **kwargs)
    return wrapped


class DataLog:
    def __init__(self, comm=MPI.COMM_WORLD):
        self.comm = comm
        self.routes = []        # (pattern, handler) in registration order
        self._matches = {}      # name -> [handler]

    def handlers_for(self, name):
        """ Handlers registered for *name*, each once, in registration order. """
        try:
            return self._matches[name]
        except KeyError:
            pass
        found = []
        for pattern, handler in self.routes:
            if fnmatchcase(name, pattern) and all(h is not handler for h in found):
                found.append(handler)
        self._matches[name] = found
        return found

    def ignored(self, name):
        """ True if no handler matches *name*.

        Example::

            if not dlog.ignored('moment.nodes'):
                dlog.append('moment.nodes', count_nodes())
        """
        return not self.handlers_for(name)

    @root_only
    def progress(self, message, completed=None):
        """ Time-stamped status line; with *completed* in [0, 1] a bar is drawn. """
        stamp = strftime("%H:%M:%S")
        if completed is None:
            pprint("[%s] %s" % (stamp, message), comm=self.comm)
            return
        completed = min(max(completed, 0.), 1.)
        done = int(round(PROGRESS_WIDTH * completed))
        pprint("[%s] %s [%s%s] %3d%%" % (stamp, message, "#" * done, "." * (PROGRESS_WIDTH - done),
                                         100 * completed), comm=self.comm)

    @root_only
    def append(self, name, value):
        for handler in self.handlers_for(name):
            handler.append(name, value)

    @root_only
    def append_all(self, values):
        """ Append a dict of values; each handler gets one call with the entries it matches. """
        batches = []
        for name, value in values.items():
            for handler in self.handlers_for(name):
                for h, batch in batches:
                    if h is handler:
                        batch[name] = value
                        break
                else:
                    batches.append((handler, {name: value}))
        for handler, batch in batches:
            handler.append_all(batch)

    @root_only
    def set_handler(self, names, handler_class, *args, **kwargs):
        """ Create ``handler_class(*args, **kwargs)`` and route *names* to it.

        :param names: name or pattern, or a list of them
        :returns: the new handler
        """
        if not (isinstance(handler_class, type) and issubclass(handler_class, DataHandler)):
            raise TypeError("handler_class must be a subclass of DataHandler")
        if isinstance(names, str):
            names = [names]
        elif not hasattr(names, '__iter__'):
            raise TypeError("Expects a name or a list of names, got %r" % (names, ))

        handler = handler_class(*args, **kwargs)
        self.routes.extend((pattern, handler) for pattern in names)
        self._matches.clear()
        return handler

    @root_only
    def remove_handler(self, handler):
        """ Unroute and close *handler*. """
        if not isinstance(handler, DataHandler):
            raise ValueError("Expects a DataHandler, got %r" % (handler, ))
        self.routes = [(p, h) for p, h in self.routes if h is not handler]
        self._matches.clear()
        handler.close()

    @root_only
    def close(self):
        """ Close every handler and drop all routes. """
        closed = []
        for _, handler in self.routes:
            if all(h is not handler for h in closed):
                handler.close()
                closed.append(handler)
        self.routes = []
        self._matches.clear()


dlog = DataLog()
