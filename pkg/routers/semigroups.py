from fastapi import APIRouter, HTTPException
from fastapi.responses import PlainTextResponse

from algebra.errors import AlgebraError, UnknownCatalogEntry
from algebra.formats import eggbox_dot
from models.schema import SemigroupRequest
from routers.common import guarded, loaded_from
from runner import execute
from toolkit_config import settings

router = APIRouter(prefix="/semigroups", tags=["Semigroups"])


@router.post("/analyze")
def analyze(request: SemigroupRequest):
    return guarded(lambda: execute("analyze", loaded_from(request), settings.default_length, settings.search_cap))


@router.post("/eggbox", response_class=PlainTextResponse)
def eggbox(request: SemigroupRequest):
    """DOT source of the egg-box diagram."""
    try:
        item = loaded_from(request)
    except UnknownCatalogEntry as e:
        raise HTTPException(status_code=404, detail=e.to_dict())
    except AlgebraError as e:
        raise HTTPException(status_code=422, detail=e.to_dict())
    return eggbox_dot(item.semigroup, name=item.name)
