import functools
import logging
import time

log = logging.getLogger(__name__)


class EventBus:
    def __init__(self):
        self._handlers = {}

    def subscribe(self, topic, handler=None):
        # usable directly or as a decorator
        if handler is None:
            return functools.partial(self.subscribe, topic)
        self._handlers.setdefault(topic, []).append(handler)
        return handler

    def unsubscribe(self, topic, handler):
        handlers = self._handlers.get(topic, [])
        if handler in handlers:
            handlers.remove(handler)

    def publish(self, topic, *args, **kwargs):
        delivered = 0
        for handler in list(self._handlers.get(topic, [])):
            try:
                handler(*args, **kwargs)
            except Exception:
                log.exception("handler %r failed on %s", handler, topic)
            else:
                delivered += 1
        return delivered


def timed(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        try:
            return fn(*args, **kwargs)
        finally:
            log.debug("%s took %.3f ms", fn.__name__, (time.perf_counter() - start) * 1000)

    return wrapper


bus = EventBus()


@bus.subscribe("greet")
def say_hello(name, punctuation="!"):
    print(f"Hello, {name}{punctuation}")
