"""Estimator plumbing: parameter introspection in the scikit-learn idiom.

The estimators in this package follow the fit/transform/predict protocol so
they can sit inside third-party pipelines and be cloned by tools that rely
on get_params/set_params. The protocol is implemented here directly; the
package itself never imports scikit-learn.
"""

from __future__ import annotations

import inspect

from .errors import ValidationError


class ParamsMixin:
    """get_params/set_params backed by the subclass __init__ signature.

    Subclasses must store every constructor argument verbatim on self under
    the same name and do no other work in __init__; validation belongs in
    fit, where it can see the data.
    """

    @classmethod
    def _param_names(cls) -> list[str]:
        sig = inspect.signature(cls.__init__)
        names = []
        for p in sig.parameters.values():
            if p.name == "self":
                continue
            if p.kind in (p.VAR_POSITIONAL, p.VAR_KEYWORD):
                raise ValidationError(
                    f"{cls.__name__}.__init__ may not use *args or **kwargs"
                )
            names.append(p.name)
        return sorted(names)

    def get_params(self, deep: bool = True) -> dict:
        out: dict = {}
        for name in self._param_names():
            value = getattr(self, name)
            if deep and hasattr(value, "get_params"):
                for key, sub in value.get_params(deep=True).items():
                    out[f"{name}__{key}"] = sub
            out[name] = value
        return out

    def set_params(self, **params) -> "ParamsMixin":
        if not params:
            return self
        valid = set(self._param_names())
        nested: dict[str, dict] = {}
        for key, value in params.items():
            name, _, sub = key.partition("__")
            if name not in valid:
                raise ValidationError(
                    f"invalid parameter {name!r} for {type(self).__name__}; "
                    f"valid parameters are {sorted(valid)}"
                )
            if sub:
                nested.setdefault(name, {})[sub] = value
            else:
                setattr(self, name, value)
        for name, sub_params in nested.items():
            getattr(self, name).set_params(**sub_params)
        return self

    def __repr__(self) -> str:
        args = ", ".join(
            f"{name}={getattr(self, name)!r}" for name in self._param_names()
        )
        return f"{type(self).__name__}({args})"
