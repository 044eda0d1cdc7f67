from django.urls import path

from . import views

app_name = "prosody"

urlpatterns = [
    path("score/", views.ScoreView.as_view(), name="score"),
    path("classify/", views.ClassifyView.as_view(), name="classify"),
]
