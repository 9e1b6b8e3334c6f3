from fastapi import APIRouter, HTTPException

from algebra import catalog
from algebra.errors import UnknownCatalogEntry

router = APIRouter(prefix="/catalog", tags=["Catalog"])


@router.get("")
def list_entries():
    return {"entries": catalog.catalog_names()}


@router.get("/{name}")
def get_entry(name: str):
    try:
        return catalog.describe(name)
    except UnknownCatalogEntry as e:
        raise HTTPException(status_code=404, detail=e.to_dict())
