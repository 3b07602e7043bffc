from altindex.domain import Dataset, IndicatorKind, PublicationRecord, ScholarRecord

K = IndicatorKind


def pub(pub_id, scholar_id="S1", year=2012, cites=0, **counts):
    return PublicationRecord(pub_id, scholar_id, year, cites,
                             {IndicatorKind(name): n for name, n in counts.items()})


def dataset(pubs=(), scholars=None, window=(2010, 2014)):
    if scholars is None:
        ids = sorted({p.scholar_id for p in pubs})
        scholars = [ScholarRecord(sid, sid) for sid in ids]
    return Dataset(tuple(scholars), tuple(pubs), window)
