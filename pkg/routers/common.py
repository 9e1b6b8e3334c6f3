"""Request loading and error mapping shared by the routers."""
import logging
from typing import Callable, Optional

from fastapi import HTTPException
from pydantic import BaseModel

from algebra.errors import AlgebraError, UnknownCatalogEntry
from models.schema import SemigroupRequest
from runner import Loaded, load, load_spec

logger = logging.getLogger(__name__)


def loaded_from(request: SemigroupRequest) -> Loaded:
    if request.catalog is not None:
        return load(f"catalog:{request.catalog}", request.opposite)
    return load_spec(request.spec or request.rees, "request", request.opposite)


def guarded(action: Callable[[], BaseModel]) -> dict:
    """Run an action and map algebraic errors onto HTTP statuses."""
    try:
        return action().model_dump(by_alias=True, mode="json")
    except HTTPException:
        raise
    except UnknownCatalogEntry as e:
        raise HTTPException(status_code=404, detail=e.to_dict())
    except AlgebraError as e:
        raise HTTPException(status_code=422, detail=e.to_dict())
    except Exception as e:
        logger.exception("unexpected failure")
        raise HTTPException(status_code=500, detail=str(e))


def pick(value: Optional[int], default: int) -> int:
    return default if value is None else value
