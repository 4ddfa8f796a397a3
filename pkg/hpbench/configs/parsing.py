from dataclasses import fields
from typing import Any, Collection, List, Mapping, Optional, Type, TypeVar

T = TypeVar('T')


def field_path(path: str, key: Any) -> str:
    """
    Join a parent field path and a key, e.g. ('scenarios[0]', 'noise').
    """
    if isinstance(key, int):
        return f'{path}[{key}]'
    return f'{path}.{key}' if path else str(key)


def check_mapping(raw: Any, path: str, messages: List[str]) -> bool:

    if not isinstance(raw, Mapping):
        messages.append(f'{path or "document"}: expected an object, '
                        f'got {type(raw).__name__}')
        return False
    return True


def check_keys(raw: Mapping, allowed: Collection[str], path: str,
               messages: List[str]):
    """
    Record every key of raw that is not in allowed.
    """
    for key in raw.keys():
        if key not in allowed:
            messages.append(f'{field_path(path, key)}: unknown field')


def dataclass_from_dict(cls: Type[T], raw: Any, path: str,
                        messages: List[str],
                        extra: Collection[str] = ()) -> Optional[T]:
    """
    Build a dataclass from the matching keys of raw, recording problems in
    messages instead of raising.

    :param cls: Dataclass to build; its own validation runs as usual.
    :param raw: JSON object.
    :param path: Field path of raw, used as the message prefix.
    :param messages: Problems found so far.
    :param extra: Keys of raw that the caller handles itself.
    :return: The instance, or None if it could not be built.
    """
    if raw is None:
        raw = {}
    if not check_mapping(raw, path, messages):
        return None
    names = {f.name for f in fields(cls)}
    check_keys(raw, names | set(extra), path, messages)
    kwargs = {key: value for key, value in raw.items() if key in names}
    try:
        return cls(**kwargs)
    except (TypeError, ValueError) as error:
        messages.append(f'{path or cls.__name__}: {error}')
        return None
