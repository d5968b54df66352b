from django.contrib import admin

from evolution import models


class RunResultInline(admin.TabularInline):
    model = models.RunResult
    extra = 0
    can_delete = False
    readonly_fields = ['run_index', 'seed', 'task', 'instance', 'best_found', 'evals_to_success', 'optimum_found',
                       'evaluations', 'generations', 'wall_time']


@admin.register(models.Experiment)
class ExperimentAdmin(admin.ModelAdmin):
    list_display = ['instance', 'mode', 'created']
    list_filter = ['mode']
    search_fields = ['instance']
    readonly_fields = ['id', 'created']
    inlines = [RunResultInline]


@admin.register(models.RunResult)
class RunResultAdmin(admin.ModelAdmin):
    list_display = ['instance', 'task', 'run_index', 'best_found', 'optimum_found', 'evals_to_success']
    list_filter = ['optimum_found', 'experiment__mode']
