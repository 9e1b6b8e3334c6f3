from fastapi import APIRouter

from models.schema import ResolveRequest
from routers.common import guarded, loaded_from, pick
from runner import execute
from toolkit_config import settings

router = APIRouter(prefix="/resolutions", tags=["Resolutions"])


@router.post("")
def resolve(request: ResolveRequest):
    """Standard resolution of the monoid completion, with its exactness report."""
    return guarded(lambda: execute(
        "resolve", loaded_from(request), pick(request.length, settings.default_length), settings.search_cap,
    ))
