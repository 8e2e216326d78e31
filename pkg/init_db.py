from core import db
from core.config import settings


if __name__ == "__main__":
    print(f"Creating check-run tables in {settings.DB_URL} ...")
    db.init_db()
    print("Done. Tables created.")
